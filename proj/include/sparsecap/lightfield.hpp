#ifndef SPARSECAP_LIGHTFIELD_HPP
#define SPARSECAP_LIGHTFIELD_HPP

#include <vector>

#include "sparsecap/tensor.hpp"

namespace sparsecap {

// Stacks rows*cols identically-shaped 2-D views into a 4-D light field
// [rows, cols, h, w]; views are consumed in row-major grid order.
SignalTensor assemble_lightfield(const std::vector<SignalTensor>& views,
                                 std::size_t rows, std::size_t cols);

// Subtracts the center view (floor(rows/2), floor(cols/2)) from every view.
// Isolates the angular/disparity component of the field.
SignalTensor center_view_subtract(const SignalTensor& lf);

} // namespace sparsecap

#endif
