#ifndef SPARSECAP_PGM_HPP
#define SPARSECAP_PGM_HPP

#include <string>

#include "sparsecap/tensor.hpp"

namespace sparsecap {

// Binary PGM ("P5") reader.  Samples are divided by maxval so pixel values
// land in [0,1] regardless of bit depth; maxval > 255 means 2-byte big-endian
// samples per the netpbm convention.  Result dims are [height, width].
SignalTensor read_pgm(const std::string& path);

} // namespace sparsecap

#endif
