#ifndef SPARSECAP_TENSOR_HPP
#define SPARSECAP_TENSOR_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace sparsecap {

enum class Kind { generic, image, video, multispectral, lightfield };

const char* kind_name(Kind k);
Kind kind_from_string(const std::string& s); // ParseError on unknown name

// Dense real N-d array, row-major (last axis fastest).
struct SignalTensor {
    std::vector<std::size_t> dims;
    std::vector<double> values;
    Kind kind = Kind::generic;

    std::size_t size() const { return values.size(); }
};

// Element count limit: 2^40 (8 TiB of doubles is already absurd).
inline constexpr std::size_t max_elements = std::size_t(1) << 40;

// Product of dims; throws DimOverflow past max_elements.
std::size_t checked_count(const std::vector<std::size_t>& dims);

// Enforces the struct invariants: >=1 axis, every axis >=1, value count
// matching dims, all values finite.  Throws std::invalid_argument.
void validate(const SignalTensor& t);

std::vector<std::size_t> row_major_strides(const std::vector<std::size_t>& dims);

inline std::size_t ravel(const std::vector<std::size_t>& idx,
                         const std::vector<std::size_t>& strides) {
    std::size_t lin = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) lin += idx[a] * strides[a];
    return lin;
}

void unravel(std::size_t lin, const std::vector<std::size_t>& dims,
             std::vector<std::size_t>& idx_out);

double sum_squares(const std::vector<double>& v);

std::string dims_to_string(const std::vector<std::size_t>& dims);

} // namespace sparsecap

#endif
