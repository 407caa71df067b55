#ifndef SPARSECAP_SYNTH_HPP
#define SPARSECAP_SYNTH_HPP

#include <cstdint>
#include <string>

#include "sparsecap/manifest.hpp"
#include "sparsecap/tensor.hpp"

namespace sparsecap {

// Desk-scale synthetic proxies: deterministic given (kind, params, seed).
struct SynthParams {
    std::size_t count = 8;
    std::size_t height = 64, width = 64; // spatial size (per view / frame / band)
    std::size_t frames = 8;              // video
    std::size_t bands = 8;               // multispectral
    std::size_t grid_rows = 9, grid_cols = 9; // lightfield
    double disparity = 1.0;              // lightfield, pixels per view step
    std::size_t cells = 18;              // cartoon Voronoi cells
    double noise_sigma = 0.01;           // video per-pixel noise
    std::size_t train_count = 0;         // leading signals get role=train
};

// Kinds: image_1f, cartoon, video, multispectral, lightfield.  Writes NDF
// files plus manifest.json under out_dir and returns the loaded manifest.
DatasetManifest synth_generate(const std::string& kind, const SynthParams& p,
                               std::uint64_t seed, const std::string& out_dir);

// Single-signal generators, exposed for tests and the acceptance runs.
SignalTensor synth_image_1f(std::size_t h, std::size_t w, std::uint64_t seed);
SignalTensor synth_cartoon(std::size_t h, std::size_t w, std::size_t cells, std::uint64_t seed);
SignalTensor synth_video(std::size_t frames, std::size_t h, std::size_t w, double noise_sigma,
                         std::uint64_t seed);
SignalTensor synth_multispectral(std::size_t bands, std::size_t h, std::size_t w, std::uint64_t seed);
SignalTensor synth_lightfield(std::size_t rows, std::size_t cols, std::size_t h, std::size_t w,
                              double disparity, std::uint64_t seed);

} // namespace sparsecap

#endif
