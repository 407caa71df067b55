#ifndef SPARSECAP_FSIO_HPP
#define SPARSECAP_FSIO_HPP

#include <string>

namespace sparsecap {

// Writes to <path>.tmp then renames, so readers never observe a partial file.
// Throws IoFailure.
void atomic_write_file(const std::string& path, const std::string& bytes);

// Whole-file read; throws IoFailure if the file cannot be opened.
std::string read_file_bytes(const std::string& path);

} // namespace sparsecap

#endif
