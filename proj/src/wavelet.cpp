#include "sparsecap/wavelet.hpp"

#include <cstring>

namespace sparsecap {
namespace {

WaveletFilter make_filter(std::vector<double> h) {
    WaveletFilter f;
    f.h = std::move(h);
    std::size_t T = f.h.size();
    f.g.resize(T);
    for (std::size_t k = 0; k < T; ++k)
        f.g[k] = (k % 2 == 0 ? 1.0 : -1.0) * f.h[T - 1 - k];
    return f;
}

} // namespace

const WaveletFilter& wavelet_filter(WaveletKind kind) {
    // Taps from the closed forms 1/sqrt(2) and (1 +- sqrt(3))/(4 sqrt(2)).
    static const WaveletFilter haar = make_filter({0.70710678118654752, 0.70710678118654752});
    static const WaveletFilter db4 = make_filter({0.48296291314469025, 0.83651630373746899,
                                                  0.22414386804185735, -0.12940952255092145});
    return kind == WaveletKind::haar ? haar : db4;
}

void wavelet_analyze_level(const WaveletFilter& f, double* x, std::size_t n, double* scratch) {
    std::size_t half = n / 2, T = f.h.size();
    for (std::size_t i = 0; i < half; ++i) {
        double a = 0.0, d = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            double v = x[(2 * i + t) % n];
            a += f.h[t] * v;
            d += f.g[t] * v;
        }
        scratch[i] = a;
        scratch[half + i] = d;
    }
    std::memcpy(x, scratch, n * sizeof(double));
}

void wavelet_synthesize_level(const WaveletFilter& f, double* x, std::size_t n, double* scratch) {
    std::size_t half = n / 2, T = f.h.size();
    std::memset(scratch, 0, n * sizeof(double));
    for (std::size_t i = 0; i < half; ++i) {
        double a = x[i], d = x[half + i];
        for (std::size_t t = 0; t < T; ++t)
            scratch[(2 * i + t) % n] += f.h[t] * a + f.g[t] * d;
    }
    std::memcpy(x, scratch, n * sizeof(double));
}

void wavelet_forward_1d(const WaveletFilter& f, double* x, std::size_t n, int levels, double* scratch) {
    std::size_t len = n;
    for (int l = 0; l < levels; ++l) {
        wavelet_analyze_level(f, x, len, scratch);
        len /= 2;
    }
}

void wavelet_inverse_1d(const WaveletFilter& f, double* x, std::size_t n, int levels, double* scratch) {
    std::size_t len = n >> levels;
    for (int l = 0; l < levels; ++l) {
        len *= 2;
        wavelet_synthesize_level(f, x, len, scratch);
    }
}

int wavelet_band(std::size_t pos, std::size_t n, int levels) {
    if (levels == 0) return 0;
    std::size_t approx = n >> levels;
    if (pos < approx) return 0;
    // d_j occupies [n/2^j, n/2^(j-1)); band index counts coarse-to-fine.
    for (int j = levels; j >= 1; --j)
        if (pos < (n >> (j - 1))) return levels - j + 1;
    return levels;
}

int default_wavelet_levels(const std::vector<std::size_t>& dims) {
    int L = 4;
    for (std::size_t d : dims) {
        int l = 0;
        while (l < 4 && d % (std::size_t(1) << (l + 1)) == 0) ++l;
        if (l < L) L = l;
    }
    return L;
}

} // namespace sparsecap
