#include "sparsecap/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "sparsecap/basis.hpp"
#include "sparsecap/errors.hpp"
#include "sparsecap/fsio.hpp"
#include "sparsecap/ndf.hpp"
#include "sparsecap/rng.hpp"

namespace sparsecap {
namespace {

// Hermitian 2-D spectrum with amplitude 1/(1 + ||f||) and random phases: a
// stand-in for the 1/f falloff of natural images.  Self-conjugate bins get a
// random sign to stay real.
struct Spectrum2D {
    std::size_t h, w;
    std::vector<double> re, im;

    Spectrum2D(std::size_t h_, std::size_t w_, rng::Stream& st) : h(h_), w(w_) {
        re.assign(h * w, 0.0);
        im.assign(h * w, 0.0);
        for (std::size_t r = 0; r < h; ++r) {
            for (std::size_t c = 0; c < w; ++c) {
                std::size_t pr = (h - r) % h, pc = (w - c) % w;
                std::size_t i = r * w + c, j = pr * w + pc;
                if (j < i) continue; // partner already drawn
                double fr = double(std::min(r, h - r)), fc = double(std::min(c, w - c));
                double amp = 1.0 / (1.0 + std::sqrt(fr * fr + fc * fc));
                if (i == j) {
                    re[i] = (st.next_u64() & 1) ? amp : -amp;
                } else {
                    double th = 2.0 * M_PI * st.next_half_open();
                    re[i] = amp * std::cos(th);
                    im[i] = amp * std::sin(th);
                    re[j] = re[i];
                    im[j] = -im[i];
                }
            }
        }
    }

    SignalTensor to_image() const {
        CoefficientTensor s;
        s.basis = BasisSpec::make(Family::dft);
        s.dims = {h, w};
        s.re = re;
        s.im = im;
        SignalTensor x = inverse(s.basis, s);
        x.kind = Kind::image;
        return x;
    }

    // Bandlimited translation by (dy, dx) pixels: per-bin phase ramp with the
    // signed frequency; Nyquist bins take the real cos factor so the shifted
    // view stays real.
    SignalTensor shifted_image(double dy, double dx) const {
        CoefficientTensor s;
        s.basis = BasisSpec::make(Family::dft);
        s.dims = {h, w};
        s.re.resize(h * w);
        s.im.resize(h * w);
        for (std::size_t r = 0; r < h; ++r) {
            double kr = axis_freq(r, h);
            bool nyq_r = (h % 2 == 0) && r == h / 2;
            for (std::size_t c = 0; c < w; ++c) {
                double kc = axis_freq(c, w);
                bool nyq_c = (w % 2 == 0) && c == w / 2;
                std::size_t i = r * w + c;
                double ph = -2.0 * M_PI * (kr * dy / double(h) + kc * dx / double(w));
                double fr = std::cos(ph), fi = std::sin(ph);
                if (nyq_r) {
                    fr *= std::cos(M_PI * dy);
                    fi *= std::cos(M_PI * dy);
                }
                if (nyq_c) {
                    fr *= std::cos(M_PI * dx);
                    fi *= std::cos(M_PI * dx);
                }
                s.re[i] = re[i] * fr - im[i] * fi;
                s.im[i] = re[i] * fi + im[i] * fr;
            }
        }
        return inverse(s.basis, s);
    }

    static double axis_freq(std::size_t k, std::size_t n) {
        if (n % 2 == 0 && k == n / 2) return 0.0; // handled via the cos factor
        return k <= n / 2 ? double(k) : double(k) - double(n);
    }
};

void require_params(bool ok, const std::string& msg) {
    if (!ok) fail(Errc::bad_params, msg);
}

} // namespace

SignalTensor synth_image_1f(std::size_t h, std::size_t w, std::uint64_t seed) {
    require_params(h >= 2 && w >= 2, "image size must be >= 2x2");
    rng::Stream st(seed);
    return Spectrum2D(h, w, st).to_image();
}

SignalTensor synth_cartoon(std::size_t h, std::size_t w, std::size_t cells, std::uint64_t seed) {
    require_params(h >= 2 && w >= 2, "image size must be >= 2x2");
    require_params(cells >= 2, "cartoon needs >= 2 cells");
    rng::Stream st(seed);
    std::vector<double> cy(cells), cx(cells), val(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        cy[j] = double(h) * st.next_half_open();
        cx[j] = double(w) * st.next_half_open();
        val[j] = st.next_half_open();
    }
    SignalTensor t;
    t.dims = {h, w};
    t.values.resize(h * w);
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) {
            std::size_t best = 0;
            double bd = 1e300;
            for (std::size_t j = 0; j < cells; ++j) {
                double dy = double(r) - cy[j], dx = double(c) - cx[j];
                double d = dy * dy + dx * dx;
                if (d < bd) {
                    bd = d;
                    best = j;
                }
            }
            t.values[r * w + c] = val[best];
        }
    t.kind = Kind::image;
    return t;
}

SignalTensor synth_video(std::size_t frames, std::size_t h, std::size_t w, double noise_sigma,
                         std::uint64_t seed) {
    require_params(frames >= 2, "video needs >= 2 frames");
    require_params(h >= 2 && w >= 2, "frame size must be >= 2x2");
    require_params(noise_sigma >= 0.0, "noise sigma must be >= 0");
    rng::Stream base_st(rng::derive(seed, 0));
    SignalTensor base = Spectrum2D(h, w, base_st).to_image();
    rng::Stream motion_st(rng::derive(seed, 1));
    long vy = long(motion_st.next_below(5)) - 2; // integer velocity in [-2, 2]
    long vx = long(motion_st.next_below(5)) - 2;
    rng::Stream noise_st(rng::derive(seed, 2));

    SignalTensor t;
    t.dims = {frames, h, w};
    t.values.resize(frames * h * w);
    for (std::size_t f = 0; f < frames; ++f) {
        long sy = ((long(f) * vy) % long(h) + long(h)) % long(h);
        long sx = ((long(f) * vx) % long(w) + long(w)) % long(w);
        for (std::size_t r = 0; r < h; ++r) {
            std::size_t src_r = (r + h - std::size_t(sy)) % h;
            for (std::size_t c = 0; c < w; ++c) {
                std::size_t src_c = (c + w - std::size_t(sx)) % w;
                t.values[(f * h + r) * w + c] =
                    base.values[src_r * w + src_c] + noise_sigma * noise_st.next_gauss();
            }
        }
    }
    t.kind = Kind::video;
    return t;
}

SignalTensor synth_multispectral(std::size_t bands, std::size_t h, std::size_t w, std::uint64_t seed) {
    require_params(bands >= 2, "multispectral needs >= 2 bands");
    require_params(h >= 2 && w >= 2, "band size must be >= 2x2");
    rng::Stream base_st(rng::derive(seed, 0));
    SignalTensor base = Spectrum2D(h, w, base_st).to_image();
    rng::Stream curve_st(rng::derive(seed, 1));
    double a1 = curve_st.next_gauss();
    double a2 = 0.5 * curve_st.next_gauss();
    double a3 = 0.25 * curve_st.next_gauss();

    SignalTensor t;
    t.dims = {bands, h, w};
    t.values.resize(bands * h * w);
    for (std::size_t b = 0; b < bands; ++b) {
        double u = double(b) / double(bands);
        double curve = 1.0 + 0.5 * (a1 * std::cos(M_PI * u) + a2 * std::cos(2.0 * M_PI * u) +
                                    a3 * std::cos(3.0 * M_PI * u));
        rng::Stream dev_st(rng::derive(seed, 2, b));
        SignalTensor dev = Spectrum2D(h, w, dev_st).to_image();
        for (std::size_t i = 0; i < h * w; ++i)
            t.values[b * h * w + i] = curve * base.values[i] + 0.02 * dev.values[i];
    }
    t.kind = Kind::multispectral;
    return t;
}

SignalTensor synth_lightfield(std::size_t rows, std::size_t cols, std::size_t h, std::size_t w,
                              double disparity, std::uint64_t seed) {
    require_params(rows >= 1 && cols >= 1, "grid must be >= 1x1");
    require_params(h >= 2 && w >= 2, "view size must be >= 2x2");
    require_params(disparity >= 0.0 && disparity <= 8.0, "disparity must be in [0, 8]");
    rng::Stream st(rng::derive(seed, 0));
    Spectrum2D tex(h, w, st);
    long rc = long(rows / 2), cc = long(cols / 2);

    SignalTensor t;
    t.dims = {rows, cols, h, w};
    t.values.resize(rows * cols * h * w);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            double dy = disparity * double(long(r) - rc);
            double dx = disparity * double(long(c) - cc);
            SignalTensor view = tex.shifted_image(dy, dx);
            std::copy(view.values.begin(), view.values.end(),
                      t.values.begin() + long((r * cols + c) * h * w));
        }
    t.kind = Kind::lightfield;
    return t;
}

DatasetManifest synth_generate(const std::string& kind, const SynthParams& p,
                               std::uint64_t seed, const std::string& out_dir) {
    require_params(p.count >= 1, "count must be >= 1");
    require_params(p.train_count <= p.count, "train count exceeds count");
    Kind entry_kind;
    if (kind == "image_1f" || kind == "cartoon") entry_kind = Kind::image;
    else if (kind == "video") entry_kind = Kind::video;
    else if (kind == "multispectral") entry_kind = Kind::multispectral;
    else if (kind == "lightfield") entry_kind = Kind::lightfield;
    else fail(Errc::bad_params, "unknown synth kind '" + kind + "'");

    std::filesystem::create_directories(out_dir);
    DatasetManifest ds;
    ds.name = kind;
    ds.base_dir = out_dir;
    if (kind == "lightfield") {
        ds.has_grid = true;
        ds.grid_rows = p.grid_rows;
        ds.grid_cols = p.grid_cols;
    }

    for (std::size_t i = 0; i < p.count; ++i) {
        std::uint64_t sig_seed = rng::derive(seed, 100, i);
        SignalTensor t;
        if (kind == "image_1f") t = synth_image_1f(p.height, p.width, sig_seed);
        else if (kind == "cartoon") t = synth_cartoon(p.height, p.width, p.cells, sig_seed);
        else if (kind == "video") t = synth_video(p.frames, p.height, p.width, p.noise_sigma, sig_seed);
        else if (kind == "multispectral") t = synth_multispectral(p.bands, p.height, p.width, sig_seed);
        else t = synth_lightfield(p.grid_rows, p.grid_cols, p.height, p.width, p.disparity, sig_seed);

        char name[64];
        std::snprintf(name, sizeof name, "%s_%03zu.ndf", kind.c_str(), i);
        write_ndf((std::filesystem::path(out_dir) / name).string(), t);
        ManifestEntry e;
        e.path = name;
        e.role = i < p.train_count ? Role::train : Role::test;
        e.kind = entry_kind;
        ds.entries.push_back(std::move(e));
    }

    atomic_write_file((std::filesystem::path(out_dir) / "manifest.json").string(),
                      manifest_to_json(ds));
    return ds;
}

} // namespace sparsecap
