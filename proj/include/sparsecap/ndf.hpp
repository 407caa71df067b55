#ifndef SPARSECAP_NDF_HPP
#define SPARSECAP_NDF_HPP

#include <string>
#include <vector>

#include "sparsecap/tensor.hpp"

// NDF: minimal binary container for dense real tensors.
//
//   bytes 0..3   magic "NDSF"
//   u32 LE       version (currently 1)
//   u32 LE       ndim
//   ndim x u64   axis extents, outermost first
//   count x f64  values, row-major, IEEE-754 little-endian
//
// The signal kind is not stored; files read back as generic.
namespace sparsecap {

SignalTensor read_ndf(const std::string& path);
void write_ndf(const std::string& path, const SignalTensor& t);

// Header-only probe (cheap shape check without loading values).
std::vector<std::size_t> read_ndf_dims(const std::string& path);

} // namespace sparsecap

#endif
