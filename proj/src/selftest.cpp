#include "sparsecap/selftest.hpp"

#include <cmath>
#include <functional>

#include "sparsecap/basis.hpp"
#include "sparsecap/coders.hpp"
#include "sparsecap/format.hpp"
#include "sparsecap/rng.hpp"
#include "sparsecap/synth.hpp"

namespace sparsecap {
namespace {

SignalTensor random_tensor(const std::vector<std::size_t>& dims, std::uint64_t seed) {
    SignalTensor x;
    x.dims = dims;
    x.values.resize(checked_count(dims));
    rng::Stream st(seed);
    for (double& v : x.values) v = st.next_gauss();
    return x;
}

double rel_l2_error(const std::vector<double>& a, const std::vector<double>& b) {
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        err += d * d;
        ref += b[i] * b[i];
    }
    return ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err);
}

// Max kept energy over every cost-feasible subset of groups (exponential;
// verification only).
double best_subset_energy(const CoeffGroups& g, long long M) {
    std::size_t n = g.groups.size();
    double best = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        long long cost = 0;
        double energy = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                cost += g.groups[i].cost;
                energy += g.groups[i].energy;
            }
        if (cost <= M && energy > best) best = energy;
    }
    return best;
}

const std::vector<std::vector<std::size_t>> parseval_shapes = {{16}, {8, 8}, {4, 4, 4}, {2, 2, 4, 4}};
const Family real_families[] = {Family::dct, Family::dft, Family::haar, Family::db4};

} // namespace

SelfTestResult run_selftest(std::uint64_t seed) {
    SelfTestResult res;
    auto check = [&](const std::string& name, const std::function<std::string()>& body) {
        SelfTestCheck c;
        c.name = name;
        try {
            c.detail = body(); // empty string means pass
            c.ok = c.detail.empty();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = e.what();
        }
        if (!c.ok) res.all_ok = false;
        res.checks.push_back(std::move(c));
    };

    check("parseval", [&]() -> std::string {
        for (Family f : real_families)
            for (const auto& dims : parseval_shapes) {
                double defect = orthonormality_check(BasisSpec::make(f), dims, 5, seed);
                if (defect > 1e-9)
                    return std::string(family_name(f)) + " " + dims_to_string(dims) +
                           " defect " + fmt_g(defect);
            }
        return "";
    });

    check("round-trip", [&]() -> std::string {
        for (Family f : real_families)
            for (const auto& dims : parseval_shapes) {
                SignalTensor x = random_tensor(dims, rng::derive(seed, 7, std::uint64_t(f)));
                BasisSpec b = BasisSpec::make(f);
                SignalTensor back = inverse(b, forward(b, x));
                double err = rel_l2_error(back.values, x.values);
                if (err > 1e-9)
                    return std::string(family_name(f)) + " " + dims_to_string(dims) +
                           " round-trip error " + fmt_g(err);
            }
        return "";
    });

    check("snr-oracles", [&]() -> std::string {
        CoefficientTensor s;
        s.basis = BasisSpec::make(Family::dct);
        s.dims = {4};
        s.re = {3, 1, 2, 0};
        s.source_energy = s.centered_energy = 14.0;
        ProgressiveOrdering ord = progressive_order(s.basis, s.dims);
        double tc = truncate_tc(s, ord, 2).snr_db;
        double sc1 = truncate_sc1(s, ord, 2).snr_db;
        double sc4 = truncate_sc4(s, ord, 4).snr_db;
        if (std::abs(tc - 5.440680443503) > 1e-3) return "tc(2) = " + fmt_fixed(tc, 6);
        if (std::abs(sc1 - 11.461280356782) > 1e-3) return "sc1(2) = " + fmt_fixed(sc1, 6);
        if (std::abs(sc4 - 4.471580313422) > 1e-3) return "sc4(4) = " + fmt_fixed(sc4, 6);
        if (measurements_for(0.02, 65536) != 1311) return "measurements_for(0.02, 65536)";
        if (measurements_for(1.0, 77) != 77) return "measurements_for(1, 77)";
        if (measurements_for(0.0, 5) != 0) return "measurements_for(0, 5)";
        if (compute_snr(0, 0, 0) != 0.0) return "zero-energy snr";
        if (!std::isinf(compute_snr(14, 14, 14))) return "lossless snr";
        return "";
    });

    check("dominance-monotonicity", [&]() -> std::string {
        const std::vector<double> grid = {0.001, 0.002, 0.005, 0.01, 0.02,
                                          0.05,  0.1,   0.2,   0.5,  1.0};
        for (int trial = 0; trial < 10; ++trial) {
            SignalTensor x = random_tensor({16, 16}, rng::derive(seed, 11, std::uint64_t(trial)));
            for (Family f : real_families) {
                BasisSpec b = BasisSpec::make(f);
                CoeffGroups g = make_groups(forward(b, x), progressive_order(b, x.dims));
                double prev_tc = -1, prev_sc1 = -1, prev_sc4 = -1;
                for (double C : grid) {
                    long long M = measurements_for(C, x.size());
                    double tc = tc_summary(g, M).snr_db;
                    double sc1 = sc1_summary(g, M).snr_db;
                    double sc4 = sc4_summary(g, M).snr_db;
                    if (sc1 + 1e-9 < tc || sc1 + 1e-9 < sc4)
                        return std::string(family_name(f)) + " dominance violated at C=" + fmt_g(C);
                    if (tc + 1e-9 < prev_tc || sc1 + 1e-9 < prev_sc1 || sc4 + 1e-9 < prev_sc4)
                        return std::string(family_name(f)) + " monotonicity violated at C=" + fmt_g(C);
                    prev_tc = tc;
                    prev_sc1 = sc1;
                    prev_sc4 = sc4;
                }
            }
        }
        return "";
    });

    check("sc1-exhaustive", [&]() -> std::string {
        // Uniform-cost bases: greedy top-M is optimal for every tiny N.
        for (std::size_t n = 1; n <= 12; ++n)
            for (int trial = 0; trial < 6; ++trial) {
                SignalTensor x = random_tensor({n}, rng::derive(seed, 13, n * 100 + trial));
                BasisSpec b = BasisSpec::make(Family::dct);
                CoeffGroups g = make_groups(forward(b, x), progressive_order(b, x.dims));
                for (long long M = 0; M <= (long long)n; ++M) {
                    double got = sc1_summary(g, M).kept_energy;
                    double want = best_subset_energy(g, M);
                    if (got + 1e-12 < want)
                        return "dct n=" + std::to_string(n) + " M=" + std::to_string(M) +
                               " greedy " + fmt_g(got) + " < best " + fmt_g(want);
                }
            }
        return "";
    });

    check("ordering-costs", [&]() -> std::string {
        for (Family f : real_families)
            for (const auto& dims : parseval_shapes) {
                ProgressiveOrdering ord = progressive_order(BasisSpec::make(f), dims);
                long long total = 0;
                for (int c : ord.costs) total += c;
                if (total != (long long)checked_count(dims))
                    return std::string(family_name(f)) + " " + dims_to_string(dims) +
                           " costs sum " + std::to_string(total);
            }
        return "";
    });

    check("determinism", [&]() -> std::string {
        SignalTensor a = synth_image_1f(16, 16, rng::derive(seed, 17));
        SignalTensor b = synth_image_1f(16, 16, rng::derive(seed, 17));
        if (a.values != b.values) return "synth_image_1f not reproducible";
        BasisSpec dct = BasisSpec::make(Family::dct);
        if (forward(dct, a).re != forward(dct, b).re) return "forward not reproducible";
        return "";
    });

    return res;
}

} // namespace sparsecap
