#include "sparsecap/tensor.hpp"

#include <cmath>
#include <stdexcept>

#include "sparsecap/errors.hpp"

namespace sparsecap {

const char* kind_name(Kind k) {
    switch (k) {
    case Kind::generic: return "generic";
    case Kind::image: return "image";
    case Kind::video: return "video";
    case Kind::multispectral: return "multispectral";
    case Kind::lightfield: return "lightfield";
    }
    return "generic";
}

Kind kind_from_string(const std::string& s) {
    if (s == "generic") return Kind::generic;
    if (s == "image") return Kind::image;
    if (s == "video") return Kind::video;
    if (s == "multispectral") return Kind::multispectral;
    if (s == "lightfield") return Kind::lightfield;
    fail(Errc::parse_error, "unknown signal kind '" + s + "'");
}

std::size_t checked_count(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) {
        if (d != 0 && n > max_elements / d)
            fail(Errc::dim_overflow, "element count exceeds 2^40 for shape " + dims_to_string(dims));
        n *= d;
    }
    if (n > max_elements)
        fail(Errc::dim_overflow, "element count exceeds 2^40 for shape " + dims_to_string(dims));
    return n;
}

void validate(const SignalTensor& t) {
    if (t.dims.empty())
        throw std::invalid_argument("tensor must have at least one axis");
    for (std::size_t d : t.dims)
        if (d == 0) throw std::invalid_argument("tensor axes must have extent >= 1");
    if (t.values.size() != checked_count(t.dims))
        throw std::invalid_argument("value count does not match shape " + dims_to_string(t.dims));
    for (double v : t.values)
        if (!std::isfinite(v)) throw std::invalid_argument("tensor contains a non-finite value");
}

std::vector<std::size_t> row_major_strides(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t a = dims.size(); a-- > 1;) s[a - 1] = s[a] * dims[a];
    return s;
}

void unravel(std::size_t lin, const std::vector<std::size_t>& dims,
             std::vector<std::size_t>& idx_out) {
    idx_out.resize(dims.size());
    for (std::size_t a = dims.size(); a-- > 0;) {
        idx_out[a] = lin % dims[a];
        lin /= dims[a];
    }
}

double sum_squares(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return acc;
}

std::string dims_to_string(const std::vector<std::size_t>& dims) {
    std::string s = "[";
    for (std::size_t a = 0; a < dims.size(); ++a) {
        if (a) s += ", ";
        s += std::to_string(dims[a]);
    }
    return s + "]";
}

} // namespace sparsecap
