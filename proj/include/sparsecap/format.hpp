#ifndef SPARSECAP_FORMAT_HPP
#define SPARSECAP_FORMAT_HPP

#include <cmath>
#include <cstdio>
#include <string>

namespace sparsecap {

inline std::string fmt_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// SNR column convention: lossless points serialize as "inf".
inline std::string fmt_snr(double v) {
    if (std::isinf(v)) return "inf";
    return fmt_fixed(v, 6);
}

} // namespace sparsecap

#endif
