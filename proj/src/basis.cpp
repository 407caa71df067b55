#include "sparsecap/basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "sparsecap/errors.hpp"
#include "sparsecap/rng.hpp"
#include "sparsecap/wavelet.hpp"

namespace sparsecap {
namespace {

// Visits every 1-D line along `axis`: fn(base, stride) with elements at
// base + t*stride for t in [0, dims[axis]).
template <class F>
void for_each_line(const std::vector<std::size_t>& dims, std::size_t axis, F fn) {
    std::size_t n = dims[axis];
    std::size_t inner = 1;
    for (std::size_t a = axis + 1; a < dims.size(); ++a) inner *= dims[a];
    std::size_t outer = 1;
    for (std::size_t a = 0; a < axis; ++a) outer *= dims[a];
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < inner; ++i)
            fn(o * n * inner + i, inner);
}

// Orthonormal DCT-II matrix, row-major [k*n + j].
std::vector<double> dct_table(std::size_t n) {
    std::vector<double> tab(n * n);
    double a0 = std::sqrt(1.0 / double(n)), ak = std::sqrt(2.0 / double(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            tab[k * n + j] = (k == 0 ? a0 : ak) * std::cos(M_PI * (2.0 * j + 1.0) * k / (2.0 * n));
    return tab;
}

void dct_axis(std::vector<double>& v, const std::vector<std::size_t>& dims, std::size_t axis,
              bool inverse_dir) {
    std::size_t n = dims[axis];
    std::vector<double> tab = dct_table(n);
    std::vector<double> line(n), out(n);
    for_each_line(dims, axis, [&](std::size_t base, std::size_t stride) {
        for (std::size_t t = 0; t < n; ++t) line[t] = v[base + t * stride];
        for (std::size_t k = 0; k < n; ++k) {
            double acc = 0.0;
            if (!inverse_dir) {
                const double* row = &tab[k * n];
                for (std::size_t j = 0; j < n; ++j) acc += row[j] * line[j];
            } else {
                for (std::size_t j = 0; j < n; ++j) acc += tab[j * n + k] * line[j];
            }
            out[k] = acc;
        }
        for (std::size_t t = 0; t < n; ++t) v[base + t * stride] = out[t];
    });
}

void dft_axis(std::vector<double>& re, std::vector<double>& im,
              const std::vector<std::size_t>& dims, std::size_t axis, bool inverse_dir) {
    std::size_t n = dims[axis];
    std::vector<double> wre(n), wim(n);
    double sign = inverse_dir ? 1.0 : -1.0;
    for (std::size_t t = 0; t < n; ++t) {
        double ang = sign * 2.0 * M_PI * double(t) / double(n);
        wre[t] = std::cos(ang);
        wim[t] = std::sin(ang);
    }
    double scale = 1.0 / std::sqrt(double(n));
    std::vector<double> lre(n), lim(n), ore(n), oim(n);
    for_each_line(dims, axis, [&](std::size_t base, std::size_t stride) {
        for (std::size_t t = 0; t < n; ++t) {
            lre[t] = re[base + t * stride];
            lim[t] = im[base + t * stride];
        }
        for (std::size_t k = 0; k < n; ++k) {
            double ar = 0.0, ai = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t t = (j * k) % n;
                ar += lre[j] * wre[t] - lim[j] * wim[t];
                ai += lre[j] * wim[t] + lim[j] * wre[t];
            }
            ore[k] = ar * scale;
            oim[k] = ai * scale;
        }
        for (std::size_t t = 0; t < n; ++t) {
            re[base + t * stride] = ore[t];
            im[base + t * stride] = oim[t];
        }
    });
}

void wavelet_axis(std::vector<double>& v, const std::vector<std::size_t>& dims, std::size_t axis,
                  WaveletKind kind, int levels, bool inverse_dir) {
    std::size_t n = dims[axis];
    const WaveletFilter& f = wavelet_filter(kind);
    std::vector<double> line(n), scratch(n);
    for_each_line(dims, axis, [&](std::size_t base, std::size_t stride) {
        for (std::size_t t = 0; t < n; ++t) line[t] = v[base + t * stride];
        if (!inverse_dir)
            wavelet_forward_1d(f, line.data(), n, levels, scratch.data());
        else
            wavelet_inverse_1d(f, line.data(), n, levels, scratch.data());
        for (std::size_t t = 0; t < n; ++t) v[base + t * stride] = line[t];
    });
}

std::size_t conjugate_partner(std::size_t lin, const std::vector<std::size_t>& dims,
                              std::vector<std::size_t>& idx_scratch) {
    unravel(lin, dims, idx_scratch);
    std::size_t partner = 0;
    for (std::size_t a = 0; a < dims.size(); ++a) {
        std::size_t k = idx_scratch[a];
        partner = partner * dims[a] + (k == 0 ? 0 : dims[a] - k);
    }
    return partner;
}

} // namespace

const char* family_name(Family f) {
    switch (f) {
    case Family::dct: return "dct";
    case Family::dft: return "dft";
    case Family::haar: return "haar";
    case Family::db4: return "db4";
    case Family::pca: return "pca";
    }
    return "?";
}

BasisSpec BasisSpec::make(Family f) {
    BasisSpec b;
    b.family = f;
    b.label = family_name(f);
    return b;
}

BasisSpec BasisSpec::make_pca(std::shared_ptr<const PcaBasis> p, std::string label) {
    BasisSpec b;
    b.family = Family::pca;
    b.pca = std::move(p);
    b.label = std::move(label);
    return b;
}

BasisSpec parse_basis_token(const std::string& token) {
    if (token == "dct") return BasisSpec::make(Family::dct);
    if (token == "dft") return BasisSpec::make(Family::dft);
    if (token == "haar") return BasisSpec::make(Family::haar);
    if (token == "db4") return BasisSpec::make(Family::db4);
    if (token.rfind("pca:", 0) == 0) {
        std::string path = token.substr(4);
        if (path.empty()) fail(Errc::parse_error, "pca basis token needs a path: pca:<file>");
        auto basis = std::make_shared<PcaBasis>(load_pca(path));
        return BasisSpec::make_pca(std::move(basis), token);
    }
    fail(Errc::parse_error, "unknown basis '" + token + "' (want dct, dft, haar, db4 or pca:<path>)");
}

int wavelet_levels_for(const BasisSpec& b, const std::vector<std::size_t>& dims) {
    if (b.levels) {
        int L = *b.levels;
        if (L < 1) throw std::invalid_argument("wavelet level override must be >= 1");
        for (std::size_t d : dims)
            if (d % (std::size_t(1) << L) != 0)
                fail(Errc::bad_wavelet_length, "axis length " + std::to_string(d) +
                                                   " not divisible by 2^" + std::to_string(L));
        return L;
    }
    return default_wavelet_levels(dims);
}

CoefficientTensor forward(const BasisSpec& b, const SignalTensor& x) {
    validate(x);
    CoefficientTensor s;
    s.basis = b;
    s.source_energy = sum_squares(x.values);
    s.centered_energy = s.source_energy;

    if (b.family == Family::pca) {
        const PcaBasis& p = *b.pca;
        if (x.dims != p.source_dims)
            fail(Errc::shape_mismatch, "signal dims " + dims_to_string(x.dims) +
                                           " != pca training dims " + dims_to_string(p.source_dims));
        std::size_t n = p.dim(), k = p.n_components();
        std::vector<double> centered(n);
        for (std::size_t i = 0; i < n; ++i) centered[i] = x.values[i] - p.mean[i];
        s.centered_energy = sum_squares(centered);
        s.dims = {k};
        s.re.resize(k);
        for (std::size_t c = 0; c < k; ++c) {
            const double* row = &p.components[c * n];
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += row[i] * centered[i];
            s.re[c] = acc;
        }
        return s;
    }

    s.dims = x.dims;
    s.re = x.values;
    switch (b.family) {
    case Family::dct:
        for (std::size_t a = 0; a < x.dims.size(); ++a) dct_axis(s.re, x.dims, a, false);
        break;
    case Family::dft:
        s.im.assign(s.re.size(), 0.0);
        for (std::size_t a = 0; a < x.dims.size(); ++a) dft_axis(s.re, s.im, x.dims, a, false);
        break;
    case Family::haar:
    case Family::db4: {
        int L = wavelet_levels_for(b, x.dims);
        WaveletKind kind = b.family == Family::haar ? WaveletKind::haar : WaveletKind::db4;
        for (std::size_t a = 0; a < x.dims.size(); ++a) wavelet_axis(s.re, x.dims, a, kind, L, false);
        break;
    }
    default: break;
    }
    return s;
}

SignalTensor inverse(const BasisSpec& b, const CoefficientTensor& s) {
    SignalTensor x;
    if (b.family == Family::pca) {
        const PcaBasis& p = *b.pca;
        if (s.re.size() != p.n_components())
            fail(Errc::shape_mismatch, "coefficient count " + std::to_string(s.re.size()) +
                                           " != n_components " + std::to_string(p.n_components()));
        std::size_t n = p.dim();
        x.dims = p.source_dims;
        x.values = p.mean;
        for (std::size_t c = 0; c < p.n_components(); ++c) {
            const double* row = &p.components[c * n];
            double w = s.re[c];
            for (std::size_t i = 0; i < n; ++i) x.values[i] += w * row[i];
        }
        return x;
    }

    if (s.dims.empty() || s.re.size() != checked_count(s.dims))
        fail(Errc::shape_mismatch, "coefficient tensor shape/value mismatch");
    x.dims = s.dims;
    switch (b.family) {
    case Family::dct:
        x.values = s.re;
        for (std::size_t a = 0; a < x.dims.size(); ++a) dct_axis(x.values, x.dims, a, true);
        break;
    case Family::dft: {
        if (s.im.size() != s.re.size())
            fail(Errc::shape_mismatch, "dft coefficients need matching re/im parts");
        x.values = s.re;
        std::vector<double> im = s.im;
        for (std::size_t a = 0; a < x.dims.size(); ++a) dft_axis(x.values, im, x.dims, a, true);
        // Conjugate-symmetric input: imaginary residue is roundoff, drop it.
        break;
    }
    case Family::haar:
    case Family::db4: {
        int L = wavelet_levels_for(b, s.dims);
        WaveletKind kind = b.family == Family::haar ? WaveletKind::haar : WaveletKind::db4;
        x.values = s.re;
        for (std::size_t a = 0; a < x.dims.size(); ++a) wavelet_axis(x.values, x.dims, a, kind, L, true);
        break;
    }
    default: break;
    }
    return x;
}

ProgressiveOrdering progressive_order(const BasisSpec& b, const std::vector<std::size_t>& dims) {
    if (dims.empty()) fail(Errc::shape_mismatch, "empty shape");
    ProgressiveOrdering ord;

    if (b.family == Family::pca) {
        const PcaBasis& p = *b.pca;
        if (dims != p.source_dims)
            fail(Errc::shape_mismatch, "dims " + dims_to_string(dims) + " != pca training dims " +
                                           dims_to_string(p.source_dims));
        std::size_t k = p.n_components();
        ord.coeff_count = k;
        ord.members.reserve(k);
        ord.costs.assign(k, 1);
        for (std::size_t i = 0; i < k; ++i) ord.members.push_back({i});
        return ord;
    }

    std::size_t count = checked_count(dims);
    std::size_t nd = dims.size();
    ord.coeff_count = count;

    if (b.family == Family::dct) {
        // Generalized zigzag: coordinate sum ascending, linear index ties.
        std::vector<std::uint64_t> key(count);
        std::vector<std::size_t> idx(nd);
        for (std::size_t i = 0; i < count; ++i) {
            unravel(i, dims, idx);
            std::uint64_t sum = 0;
            for (std::size_t v : idx) sum += v;
            key[i] = sum;
        }
        std::vector<std::size_t> order(count);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
            return key[a] != key[c] ? key[a] < key[c] : a < c;
        });
        ord.members.reserve(count);
        ord.costs.assign(count, 1);
        for (std::size_t i : order) ord.members.push_back({i});
        return ord;
    }

    if (b.family == Family::dft) {
        // Conjugate pairs grouped; order by total folded frequency, then by
        // the pair's smaller linear index.
        std::vector<std::size_t> idx(nd);
        std::vector<std::size_t> canon;
        std::vector<std::size_t> partner_of(count);
        std::vector<std::uint64_t> freq(count);
        canon.reserve(count / 2 + 1);
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t j = conjugate_partner(i, dims, idx);
            partner_of[i] = j;
            if (i <= j) {
                unravel(i, dims, idx);
                std::uint64_t f = 0;
                for (std::size_t a = 0; a < nd; ++a) f += std::min(idx[a], dims[a] - idx[a]);
                freq[i] = f;
                canon.push_back(i);
            }
        }
        std::sort(canon.begin(), canon.end(), [&](std::size_t a, std::size_t c) {
            return freq[a] != freq[c] ? freq[a] < freq[c] : a < c;
        });
        ord.members.reserve(canon.size());
        ord.costs.reserve(canon.size());
        for (std::size_t i : canon) {
            if (partner_of[i] == i) {
                ord.members.push_back({i});
                ord.costs.push_back(1);
            } else {
                ord.members.push_back({i, partner_of[i]});
                ord.costs.push_back(2);
            }
        }
        return ord;
    }

    // Wavelets: subband walk, coarse to fine.  Per coefficient: band index
    // along each axis, then sort by (finest band involved, # high-pass axes,
    // band pattern lexicographic, linear index).
    int L = wavelet_levels_for(b, dims);
    std::vector<std::vector<std::uint8_t>> axis_band(nd);
    for (std::size_t a = 0; a < nd; ++a) {
        axis_band[a].resize(dims[a]);
        for (std::size_t p = 0; p < dims[a]; ++p)
            axis_band[a][p] = std::uint8_t(wavelet_band(p, dims[a], L));
    }
    std::vector<std::uint8_t> bands(count * nd);
    std::vector<std::uint8_t> level(count), nhp(count);
    std::vector<std::size_t> idx(nd);
    for (std::size_t i = 0; i < count; ++i) {
        unravel(i, dims, idx);
        std::uint8_t mx = 0, hp = 0;
        for (std::size_t a = 0; a < nd; ++a) {
            std::uint8_t ba = axis_band[a][idx[a]];
            bands[i * nd + a] = ba;
            if (ba > mx) mx = ba;
            if (ba > 0) ++hp;
        }
        level[i] = mx;
        nhp[i] = hp;
    }
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
        if (level[a] != level[c]) return level[a] < level[c];
        if (nhp[a] != nhp[c]) return nhp[a] < nhp[c];
        int cmp = std::memcmp(&bands[a * nd], &bands[c * nd], nd);
        if (cmp != 0) return cmp < 0;
        return a < c;
    });
    ord.members.reserve(count);
    ord.costs.assign(count, 1);
    for (std::size_t i : order) ord.members.push_back({i});
    return ord;
}

double orthonormality_check(const BasisSpec& b, const std::vector<std::size_t>& dims,
                            int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    double worst = 0.0;
    std::size_t count = checked_count(dims);
    for (int t = 0; t < trials; ++t) {
        rng::Stream st(rng::derive(seed, std::uint64_t(t)));
        SignalTensor x;
        x.dims = dims;
        x.values.resize(count);
        for (double& v : x.values) v = st.next_gauss();
        CoefficientTensor s = forward(b, x);
        double ref = b.family == Family::pca ? s.centered_energy : s.source_energy;
        double got = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) got += s.magnitude_sq(i);
        if (ref > 0.0) worst = std::max(worst, std::abs(got - ref) / ref);
    }
    return worst;
}

} // namespace sparsecap
