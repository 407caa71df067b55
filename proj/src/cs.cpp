#include "sparsecap/cs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "sparsecap/coders.hpp"
#include "sparsecap/errors.hpp"
#include "sparsecap/rng.hpp"

namespace sparsecap {

Eigen::MatrixXd gaussian_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
    if (m < 1 || n < 1) throw std::invalid_argument("matrix dims must be >= 1");
    Eigen::MatrixXd A(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rng::Stream st(rng::derive(seed, i, j));
            A(long(i), long(j)) = st.next_gauss();
        }
    for (long j = 0; j < A.cols(); ++j) {
        double norm = A.col(j).norm();
        if (norm > 0.0) A.col(j) /= norm;
    }
    return A;
}

OmpResult omp(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, std::size_t k_max,
              double residual_tol) {
    if (k_max > std::size_t(A.rows()))
        throw std::invalid_argument("k_max exceeds measurement count");
    OmpResult out;
    out.x = Eigen::VectorXd::Zero(A.cols());
    double ynorm = y.norm();
    if (ynorm == 0.0) return out;

    Eigen::VectorXd r = y;
    std::vector<bool> picked(std::size_t(A.cols()), false);
    Eigen::VectorXd coef;
    while (out.support.size() < k_max && r.norm() > residual_tol * ynorm) {
        Eigen::VectorXd c = A.transpose() * r;
        long best = -1;
        double best_abs = 0.0;
        for (long j = 0; j < c.size(); ++j) {
            if (picked[std::size_t(j)]) continue;
            double a = std::abs(c(j));
            if (a > best_abs) {
                best_abs = a;
                best = j;
            }
        }
        if (best < 0 || best_abs == 0.0) break; // residual orthogonal to every atom
        picked[std::size_t(best)] = true;
        out.support.push_back(std::size_t(best));

        Eigen::MatrixXd As(A.rows(), long(out.support.size()));
        for (std::size_t s = 0; s < out.support.size(); ++s)
            As.col(long(s)) = A.col(long(out.support[s]));
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
        if (qr.rank() < As.cols())
            fail(Errc::singular_subproblem, "selected atoms are numerically dependent");
        coef = qr.solve(y);
        r = y - As * coef;
    }
    for (std::size_t s = 0; s < out.support.size(); ++s)
        out.x(long(out.support[s])) = coef(long(s));
    return out;
}

CsReport run_cs_trials(const CsTrialConfig& cfg) {
    if (cfg.n < 1 || cfg.k > cfg.m || cfg.m > cfg.n || cfg.trials < 1)
        throw std::invalid_argument("need k <= m <= n, n >= 1, trials >= 1");
    if (cfg.noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be >= 0");

    CsReport rep;
    rep.cfg = cfg;
    Eigen::MatrixXd A = gaussian_matrix(cfg.m, cfg.n, rng::derive(cfg.seed, 0));

    std::size_t exact = 0;
    double snr_sum = 0.0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        rng::Stream st(rng::derive(cfg.seed, 1, t));
        std::vector<std::size_t> support;
        while (support.size() < cfg.k) {
            std::size_t j = std::size_t(st.next_below(cfg.n));
            if (std::find(support.begin(), support.end(), j) == support.end())
                support.push_back(j);
        }
        Eigen::VectorXd x = Eigen::VectorXd::Zero(long(cfg.n));
        for (std::size_t j : support) x(long(j)) = st.next_gauss();
        Eigen::VectorXd y = A * x;
        if (cfg.noise_sigma > 0.0)
            for (long i = 0; i < y.size(); ++i) y(i) += cfg.noise_sigma * st.next_gauss();

        CsTrial trial;
        try {
            OmpResult r = omp(A, y, cfg.k, 1e-9);
            std::vector<std::size_t> got = r.support, want = support;
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            trial.support_exact = got == want;
            double xn = x.norm(), err = (x - r.x).norm();
            if (xn == 0.0 || err == 0.0)
                trial.snr_db = std::numeric_limits<double>::infinity();
            else
                trial.snr_db = 20.0 * std::log10(xn / err);
        } catch (const Error&) {
            trial.support_exact = false; // singular subproblem: failed trial
            trial.snr_db = 0.0;
        }
        if (trial.support_exact) ++exact;
        snr_sum += std::min(trial.snr_db, snr_cap_db);
        rep.trials.push_back(trial);
    }
    rep.success_rate = double(exact) / double(cfg.trials);
    rep.mean_snr_db = snr_sum / double(cfg.trials);
    return rep;
}

std::string cs_report_to_json(const CsReport& r) {
    nlohmann::json j;
    j["config"] = {{"n", r.cfg.n},       {"k", r.cfg.k},
                   {"m", r.cfg.m},       {"trials", r.cfg.trials},
                   {"seed", r.cfg.seed}, {"noise_sigma", r.cfg.noise_sigma}};
    nlohmann::json trials = nlohmann::json::array();
    for (const CsTrial& t : r.trials)
        trials.push_back({{"support_exact", t.support_exact},
                          {"snr_db", std::min(t.snr_db, snr_cap_db)}});
    j["trials"] = std::move(trials);
    j["summary"] = {{"success_rate", r.success_rate}, {"mean_snr_db", r.mean_snr_db}};
    return j.dump(2) + "\n";
}

} // namespace sparsecap
