#ifndef SPARSECAP_RNG_HPP
#define SPARSECAP_RNG_HPP

#include <cmath>
#include <cstdint>

// Deterministic pseudo-random stream (SplitMix64).  Every randomized quantity
// in the library is keyed off a master seed plus integer labels, so results
// are bit-identical across runs, platforms and thread counts.
namespace sparsecap::rng {

inline constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ull;

inline constexpr std::uint64_t mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Label-derived subseeds.  The +1 keeps label 0 distinct from the bare seed.
inline constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a) {
    return mix(seed + (a + 1) * golden);
}

inline constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return mix(derive(seed, a) + (b + 1) * golden);
}

class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += golden;
        return mix(state_);
    }

    // Uniform in (0, 1]: 53 mantissa bits, zero excluded so log() is safe.
    double next_unit() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Uniform in [0, 1).
    double next_half_open() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller, one deviate per call (the sine twin is
    // discarded to keep the call-to-sample mapping trivially reproducible).
    double next_gauss() {
        double u1 = next_unit();
        double u2 = next_half_open();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

} // namespace sparsecap::rng

#endif
