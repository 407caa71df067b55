#ifndef SPARSECAP_WAVELET_HPP
#define SPARSECAP_WAVELET_HPP

#include <cstddef>
#include <vector>

namespace sparsecap {

// Periodized orthonormal filter banks.  Coefficient layout after an L-level
// 1-D analysis of length n: [a_L | d_L | d_{L-1} | ... | d_1], where a_L has
// n/2^L entries and d_j has n/2^j.
enum class WaveletKind { haar, db4 };

struct WaveletFilter {
    std::vector<double> h; // low-pass analysis taps
    std::vector<double> g; // high-pass via QMF: g[k] = (-1)^k h[T-1-k]
};

const WaveletFilter& wavelet_filter(WaveletKind kind);

// One analysis/synthesis level on the leading `n` entries (n even).
void wavelet_analyze_level(const WaveletFilter& f, double* x, std::size_t n, double* scratch);
void wavelet_synthesize_level(const WaveletFilter& f, double* x, std::size_t n, double* scratch);

// Full L-level transform of a contiguous length-n line, in place.
void wavelet_forward_1d(const WaveletFilter& f, double* x, std::size_t n, int levels, double* scratch);
void wavelet_inverse_1d(const WaveletFilter& f, double* x, std::size_t n, int levels, double* scratch);

// Band of a coefficient position: 0 is the level-L approximation, b in 1..L
// is the detail born at level L-b+1 (so larger band = finer scale).
int wavelet_band(std::size_t pos, std::size_t n, int levels);

// Largest L <= 4 with every axis divisible by 2^L; 0 means the transform
// degenerates to the identity (odd axes).
int default_wavelet_levels(const std::vector<std::size_t>& dims);

} // namespace sparsecap

#endif
