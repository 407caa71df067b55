#ifndef SPARSECAP_SWEEP_HPP
#define SPARSECAP_SWEEP_HPP

#include <string>
#include <vector>

#include "sparsecap/basis.hpp"
#include "sparsecap/coders.hpp"
#include "sparsecap/manifest.hpp"

namespace sparsecap {

struct SweepOptions {
    bool center_subtract = false; // lightfield entries only
    int jobs = 0;                 // <= 0 means hardware concurrency
};

struct SweepRecord {
    std::string dataset, signal_id, basis, method;
    double C = 0.0;
    long long M = 0; // measurement budget round(C*N)
    long long K_eff = 0;
    double snr_db = 0.0; // +inf for lossless points
};

struct SweepFailure {
    std::string signal_id;
    std::string basis; // "-" for load failures
    std::string message;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<SweepFailure> failures;
};

// One record per (test signal x basis x method x C).  Signals that fail to
// load or transform become trailer entries instead of aborting the run.
// Output order: signal_id lexicographic, then basis and method by their list
// rank, then C ascending — identical regardless of opts.jobs.
SweepResult run_sweep(const DatasetManifest& ds, const std::vector<BasisSpec>& bases,
                      const std::vector<std::string>& methods, const std::vector<double>& grid,
                      const SweepOptions& opts = {});

// CSV with header dataset,signal_id,basis,method,C,M,K_eff,snr_db; failures
// appended as "# failed ..." comment lines.
std::string sweep_to_csv(const SweepResult& r);
SweepResult sweep_from_csv(const std::string& text);

struct AggregateRow {
    std::string basis, method;
    double C = 0.0;
    double mean_db = 0.0;   // inf capped at cap_db before averaging
    double median_db = 0.0; // of the capped values
    std::size_t count = 0;
};

// Keys appear in first-appearance order of the record stream.
std::vector<AggregateRow> aggregate(const std::vector<SweepRecord>& records,
                                    double cap_db = snr_cap_db);

struct EnvelopeRow {
    std::string method;
    double C = 0.0;
    double best_snr_db = 0.0;
    std::string best_basis;
};

// Per (method, C): max mean over bases; ties go to the basis earlier in
// basis_rank.  Ranks default to first appearance when parsed from CSV.
std::vector<EnvelopeRow> envelope(const std::vector<AggregateRow>& agg,
                                  const std::vector<std::string>& basis_rank,
                                  const std::vector<std::string>& method_rank);
std::string envelope_to_csv(const std::vector<EnvelopeRow>& rows);
std::vector<EnvelopeRow> envelope_from_csv(const std::string& text);

struct WinReport {
    std::string method_a, method_b;
    std::vector<double> grid;
    std::vector<double> gaps_db;    // snr_a - snr_b per grid point
    std::vector<double> win_region; // C values with positive gap
    double max_gap_db = 0.0;
    double argmax_C = 0.0; // earliest C attaining max_gap_db
};

WinReport win_regions(const std::vector<EnvelopeRow>& env, const std::string& a,
                      const std::string& b);
std::string win_report_to_json(const WinReport& w);

// Self-contained line chart of the two envelopes (C log-scale vs SNR dB).
std::string win_report_to_svg(const std::vector<EnvelopeRow>& env, const WinReport& w);

} // namespace sparsecap

#endif
