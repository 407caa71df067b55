#ifndef SPARSECAP_CODERS_HPP
#define SPARSECAP_CODERS_HPP

#include <cstdint>
#include <vector>

#include "sparsecap/basis.hpp"

namespace sparsecap {

// M = round(C*N), half away from zero.
long long measurements_for(double C, std::size_t N);

// Aggregation/plotting cap for the +infinity sentinel.
inline constexpr double snr_cap_db = 300.0;

// Parseval SNR: err^2 = max(0, centered - kept); 0-energy signals give 0 dB;
// err^2 <= 1e-24 * total collapses to +infinity (lossless).  For complete
// bases centered == total and this is 10*log10(total / err^2) exactly.
double compute_snr(double total_signal_energy, double centered_energy, double kept_energy);

struct TruncationResult {
    std::vector<std::size_t> kept; // retained coefficient indices
    long long M = 0;               // measurements consumed (sc4: the full budget spent)
    long long K_eff = 0;           // nonzero coefficients retained
    double kept_energy = 0.0;
    double snr_db = 0.0;
};

// Per-(signal, basis) precomputation so a C-grid sweep reuses one transform:
// group energies in progressive order plus the magnitude ranking.
struct CoeffGroups {
    struct Group {
        double energy;
        int cost;
        int nnz;
    };
    std::vector<Group> groups;       // progressive order
    std::vector<std::size_t> by_mag; // group ids: energy desc, earlier position wins ties
    double total_energy = 0.0;
    double centered_energy = 0.0;
    bool complete = true; // false for pca (subspace basis)
};

CoeffGroups make_groups(const CoefficientTensor& s, const ProgressiveOrdering& ord);

// Summary-only variants used by the sweep hot path.
struct TruncSummary {
    long long M = 0;
    long long K_eff = 0;
    double kept_energy = 0.0;
    double snr_db = 0.0;
};

TruncSummary tc_summary(const CoeffGroups& g, long long M);
TruncSummary sc1_summary(const CoeffGroups& g, long long M);
TruncSummary sc4_summary(const CoeffGroups& g, long long M);

// TC: prefix of the progressive order; walking stops at the first group the
// remaining budget cannot afford.
TruncationResult truncate_tc(const CoefficientTensor& s, const ProgressiveOrdering& ord, long long M);

// SC1: greedy by magnitude under the same cost accounting; unaffordable
// groups are skipped and the walk continues.  Ties go to the earlier
// progressive position.
TruncationResult truncate_sc1(const CoefficientTensor& s, const ProgressiveOrdering& ord, long long M);

// SC4: SC1 with budget floor(M/4); reported M stays the full spend.
TruncationResult truncate_sc4(const CoefficientTensor& s, const ProgressiveOrdering& ord, long long M);

} // namespace sparsecap

#endif
