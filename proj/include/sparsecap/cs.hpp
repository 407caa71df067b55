#ifndef SPARSECAP_CS_HPP
#define SPARSECAP_CS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sparsecap {

struct CsTrialConfig {
    std::size_t n = 256;
    std::size_t k = 8;
    std::size_t m = 32;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;
};

struct CsTrial {
    bool support_exact = false;
    double snr_db = 0.0;
};

struct CsReport {
    CsTrialConfig cfg;
    std::vector<CsTrial> trials;
    double success_rate = 0.0;
    double mean_snr_db = 0.0; // +inf capped at 300 dB
};

// Entries are standard normal keyed by (seed, row, col) — rows are nested
// across m for a fixed seed — then columns scaled to unit norm.
Eigen::MatrixXd gaussian_matrix(std::size_t m, std::size_t n, std::uint64_t seed);

struct OmpResult {
    std::vector<std::size_t> support; // in selection order
    Eigen::VectorXd x;                // dense length-n estimate
};

// Standard OMP: argmax |A^T r| (ties to the lowest index), least-squares
// re-solve on the support, stop at k_max atoms or ||r|| <= tol * ||y||.
OmpResult omp(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, std::size_t k_max,
              double residual_tol);

CsReport run_cs_trials(const CsTrialConfig& cfg);
std::string cs_report_to_json(const CsReport& r);

} // namespace sparsecap

#endif
