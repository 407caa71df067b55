#include "sparsecap/lightfield.hpp"

#include "sparsecap/errors.hpp"

namespace sparsecap {

SignalTensor assemble_lightfield(const std::vector<SignalTensor>& views,
                                 std::size_t rows, std::size_t cols) {
    if (views.size() != rows * cols)
        fail(Errc::count_mismatch, std::to_string(views.size()) + " views for a " +
                                       std::to_string(rows) + "x" + std::to_string(cols) + " grid");
    if (views.empty()) fail(Errc::count_mismatch, "empty view list");
    const std::vector<std::size_t>& vd = views.front().dims;
    if (vd.size() != 2) fail(Errc::dim_mismatch, "views must be 2-D, got " + dims_to_string(vd));
    for (const SignalTensor& v : views)
        if (v.dims != vd)
            fail(Errc::dim_mismatch, "view dims " + dims_to_string(v.dims) + " != " + dims_to_string(vd));

    SignalTensor lf;
    lf.dims = {rows, cols, vd[0], vd[1]};
    lf.values.reserve(checked_count(lf.dims));
    for (const SignalTensor& v : views)
        lf.values.insert(lf.values.end(), v.values.begin(), v.values.end());
    lf.kind = Kind::lightfield;
    return lf;
}

SignalTensor center_view_subtract(const SignalTensor& lf) {
    if (lf.dims.size() != 4)
        fail(Errc::not_a_lightfield, "expected a 4-D tensor, got " + dims_to_string(lf.dims));
    std::size_t rows = lf.dims[0], cols = lf.dims[1];
    std::size_t view_n = lf.dims[2] * lf.dims[3];
    std::size_t center = (rows / 2) * cols + cols / 2;
    const double* cv = lf.values.data() + center * view_n;

    SignalTensor out = lf;
    for (std::size_t v = 0; v < rows * cols; ++v) {
        double* dst = out.values.data() + v * view_n;
        for (std::size_t i = 0; i < view_n; ++i) dst[i] -= cv[i];
    }
    out.kind = Kind::lightfield;
    return out;
}

} // namespace sparsecap
