#include "sparsecap/coders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sparsecap/errors.hpp"

namespace sparsecap {
namespace {

struct Picked {
    std::vector<std::size_t> gids;
    long long consumed = 0;
    long long k_eff = 0;
    double kept_energy = 0.0;
    bool all = false;
};

Picked pick_tc(const CoeffGroups& g, long long M) {
    Picked p;
    long long remaining = M;
    for (std::size_t i = 0; i < g.groups.size(); ++i) {
        const CoeffGroups::Group& grp = g.groups[i];
        if (grp.cost > remaining) break;
        remaining -= grp.cost;
        p.gids.push_back(i);
        p.consumed += grp.cost;
        p.k_eff += grp.nnz;
        p.kept_energy += grp.energy;
    }
    p.all = p.gids.size() == g.groups.size();
    return p;
}

Picked pick_greedy(const CoeffGroups& g, long long M) {
    Picked p;
    long long remaining = M;
    for (std::size_t gi : g.by_mag) {
        if (remaining <= 0) break;
        const CoeffGroups::Group& grp = g.groups[gi];
        if (grp.cost > remaining) continue; // pair too big for the tail budget
        remaining -= grp.cost;
        p.gids.push_back(gi);
        p.consumed += grp.cost;
        p.k_eff += grp.nnz;
        p.kept_energy += grp.energy;
    }
    p.all = p.gids.size() == g.groups.size();
    return p;
}

// Keeping every group of a complete basis is lossless by construction; snap
// the energy so roundoff cannot turn C=1 into a large-but-finite SNR.
double effective_kept(const CoeffGroups& g, const Picked& p) {
    if (p.all && g.complete) return g.centered_energy;
    return p.kept_energy;
}

TruncSummary summarize(const CoeffGroups& g, const Picked& p, long long reported_m) {
    TruncSummary r;
    r.M = reported_m;
    r.K_eff = p.k_eff;
    r.kept_energy = p.kept_energy;
    r.snr_db = compute_snr(g.total_energy, g.centered_energy, effective_kept(g, p));
    return r;
}

void check_budget(long long M) {
    if (M < 0) throw std::invalid_argument("measurement budget must be >= 0");
}

TruncationResult materialize(const CoeffGroups& g, const ProgressiveOrdering& ord,
                             const Picked& p, long long reported_m) {
    TruncationResult r;
    r.M = reported_m;
    r.K_eff = p.k_eff;
    r.kept_energy = p.kept_energy;
    r.snr_db = compute_snr(g.total_energy, g.centered_energy, effective_kept(g, p));
    for (std::size_t gi : p.gids)
        for (std::size_t idx : ord.members[gi]) r.kept.push_back(idx);
    return r;
}

} // namespace

long long measurements_for(double C, std::size_t N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    if (!(C >= 0.0 && C <= 1.0))
        fail(Errc::out_of_range, "compression factor " + std::to_string(C) + " outside [0, 1]");
    return std::llround(C * double(N));
}

double compute_snr(double total_signal_energy, double centered_energy, double kept_energy) {
    if (total_signal_energy < 0.0 || centered_energy < 0.0 || kept_energy < 0.0)
        fail(Errc::negative_energy, "energies must be nonnegative");
    if (kept_energy > centered_energy + 1e-9 * centered_energy)
        throw std::invalid_argument("kept energy exceeds centered energy");
    if (total_signal_energy == 0.0) return 0.0;
    double err2 = std::max(0.0, centered_energy - kept_energy);
    if (err2 <= 1e-24 * total_signal_energy) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(total_signal_energy / err2);
}

CoeffGroups make_groups(const CoefficientTensor& s, const ProgressiveOrdering& ord) {
    CoeffGroups g;
    g.total_energy = s.source_energy;
    g.centered_energy = s.centered_energy;
    g.complete = s.basis.family != Family::pca;
    g.groups.reserve(ord.members.size());
    for (std::size_t i = 0; i < ord.members.size(); ++i) {
        CoeffGroups::Group grp{0.0, ord.costs[i], 0};
        for (std::size_t idx : ord.members[i]) {
            double e = s.magnitude_sq(idx);
            grp.energy += e;
            if (e > 0.0) ++grp.nnz;
        }
        g.groups.push_back(grp);
    }
    g.by_mag.resize(g.groups.size());
    std::iota(g.by_mag.begin(), g.by_mag.end(), 0);
    std::sort(g.by_mag.begin(), g.by_mag.end(), [&](std::size_t a, std::size_t b) {
        double ea = g.groups[a].energy, eb = g.groups[b].energy;
        return ea != eb ? ea > eb : a < b;
    });
    return g;
}

TruncSummary tc_summary(const CoeffGroups& g, long long M) {
    check_budget(M);
    Picked p = pick_tc(g, M);
    return summarize(g, p, p.consumed);
}

TruncSummary sc1_summary(const CoeffGroups& g, long long M) {
    check_budget(M);
    Picked p = pick_greedy(g, M);
    return summarize(g, p, p.consumed);
}

TruncSummary sc4_summary(const CoeffGroups& g, long long M) {
    check_budget(M);
    Picked p = pick_greedy(g, M / 4);
    return summarize(g, p, M);
}

TruncationResult truncate_tc(const CoefficientTensor& s, const ProgressiveOrdering& ord, long long M) {
    check_budget(M);
    CoeffGroups g = make_groups(s, ord);
    Picked p = pick_tc(g, M);
    return materialize(g, ord, p, p.consumed);
}

TruncationResult truncate_sc1(const CoefficientTensor& s, const ProgressiveOrdering& ord, long long M) {
    check_budget(M);
    CoeffGroups g = make_groups(s, ord);
    Picked p = pick_greedy(g, M);
    return materialize(g, ord, p, p.consumed);
}

TruncationResult truncate_sc4(const CoefficientTensor& s, const ProgressiveOrdering& ord, long long M) {
    check_budget(M);
    CoeffGroups g = make_groups(s, ord);
    Picked p = pick_greedy(g, M / 4);
    return materialize(g, ord, p, M);
}

} // namespace sparsecap
