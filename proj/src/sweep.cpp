#include "sparsecap/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "sparsecap/errors.hpp"
#include "sparsecap/format.hpp"
#include "sparsecap/lightfield.hpp"

namespace sparsecap {
namespace {

int method_index(const std::string& m) {
    if (m == "tc") return 0;
    if (m == "sc1") return 1;
    if (m == "sc4") return 2;
    fail(Errc::parse_error, "unknown method '" + m + "' (want tc, sc1 or sc4)");
}

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("grid must be non-empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
            throw std::invalid_argument("grid values must lie in [0, 1]");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw std::invalid_argument("grid must be strictly increasing");
    }
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_snr(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r' || c == ',') c = ' ';
    return s;
}

constexpr char csv_header[] = "dataset,signal_id,basis,method,C,M,K_eff,snr_db";

} // namespace

SweepResult run_sweep(const DatasetManifest& ds, const std::vector<BasisSpec>& bases,
                      const std::vector<std::string>& methods, const std::vector<double>& grid,
                      const SweepOptions& opts) {
    if (bases.empty()) throw std::invalid_argument("need at least one basis");
    if (methods.empty()) throw std::invalid_argument("need at least one method");
    for (const std::string& m : methods) method_index(m);
    check_grid(grid);

    std::vector<const ManifestEntry*> tests;
    for (const ManifestEntry& e : ds.entries)
        if (e.role == Role::test) tests.push_back(&e);

    std::vector<std::vector<SweepRecord>> per_signal(tests.size());
    std::vector<std::vector<SweepFailure>> per_failure(tests.size());

    auto work = [&](std::size_t si) {
        const ManifestEntry& entry = *tests[si];
        SignalTensor x;
        try {
            x = load_entry_tensor(ds, entry);
            if (opts.center_subtract && x.kind == Kind::lightfield)
                x = center_view_subtract(x);
        } catch (const std::exception& e) {
            per_failure[si].push_back({entry.path, "-", sanitize(e.what())});
            return;
        }
        std::size_t N = x.size();
        for (const BasisSpec& b : bases) {
            CoeffGroups groups;
            try {
                CoefficientTensor s = forward(b, x);
                ProgressiveOrdering ord = progressive_order(b, x.dims);
                groups = make_groups(s, ord);
            } catch (const std::exception& e) {
                per_failure[si].push_back({entry.path, b.label, sanitize(e.what())});
                continue;
            }
            for (const std::string& m : methods) {
                for (double C : grid) {
                    long long budget = measurements_for(C, N);
                    TruncSummary sum;
                    switch (method_index(m)) {
                    case 0: sum = tc_summary(groups, budget); break;
                    case 1: sum = sc1_summary(groups, budget); break;
                    default: sum = sc4_summary(groups, budget); break;
                    }
                    SweepRecord rec;
                    rec.dataset = ds.name;
                    rec.signal_id = entry.path;
                    rec.basis = b.label;
                    rec.method = m;
                    rec.C = C;
                    rec.M = budget;
                    rec.K_eff = sum.K_eff;
                    rec.snr_db = sum.snr_db;
                    per_signal[si].push_back(std::move(rec));
                }
            }
        }
    };

    unsigned jobs = opts.jobs > 0 ? unsigned(opts.jobs) : std::thread::hardware_concurrency();
    if (jobs < 1) jobs = 1;
    jobs = std::min<unsigned>(jobs, std::max<std::size_t>(tests.size(), 1));
    if (jobs <= 1 || tests.size() <= 1) {
        for (std::size_t i = 0; i < tests.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= tests.size()) return;
                    work(i);
                }
            });
        for (std::thread& t : pool) t.join();
    }

    SweepResult out;
    for (std::vector<SweepRecord>& v : per_signal)
        out.records.insert(out.records.end(), std::make_move_iterator(v.begin()),
                           std::make_move_iterator(v.end()));
    for (std::vector<SweepFailure>& v : per_failure)
        out.failures.insert(out.failures.end(), std::make_move_iterator(v.begin()),
                            std::make_move_iterator(v.end()));

    // Rank lookups so output order follows the CLI token lists.
    std::map<std::string, std::size_t> basis_rank, method_rank;
    for (std::size_t i = 0; i < bases.size(); ++i) basis_rank.emplace(bases[i].label, i);
    for (std::size_t i = 0; i < methods.size(); ++i) method_rank.emplace(methods[i], i);
    std::stable_sort(out.records.begin(), out.records.end(),
                     [&](const SweepRecord& a, const SweepRecord& b) {
                         if (a.signal_id != b.signal_id) return a.signal_id < b.signal_id;
                         std::size_t ba = basis_rank.at(a.basis), bb = basis_rank.at(b.basis);
                         if (ba != bb) return ba < bb;
                         std::size_t ma = method_rank.at(a.method), mb = method_rank.at(b.method);
                         if (ma != mb) return ma < mb;
                         return a.C < b.C;
                     });
    std::stable_sort(out.failures.begin(), out.failures.end(),
                     [&](const SweepFailure& a, const SweepFailure& b) {
                         if (a.signal_id != b.signal_id) return a.signal_id < b.signal_id;
                         return a.basis < b.basis;
                     });
    return out;
}

std::string sweep_to_csv(const SweepResult& r) {
    std::string out = csv_header;
    out += '\n';
    for (const SweepRecord& rec : r.records) {
        out += rec.dataset;
        out += ',';
        out += rec.signal_id;
        out += ',';
        out += rec.basis;
        out += ',';
        out += rec.method;
        out += ',';
        out += fmt_g(rec.C);
        out += ',';
        out += std::to_string(rec.M);
        out += ',';
        out += std::to_string(rec.K_eff);
        out += ',';
        out += fmt_snr(rec.snr_db);
        out += '\n';
    }
    for (const SweepFailure& f : r.failures)
        out += "# failed signal=" + f.signal_id + " basis=" + f.basis + " error=" + f.message + "\n";
    return out;
}

SweepResult sweep_from_csv(const std::string& text) {
    SweepResult r;
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            constexpr char prefix[] = "# failed signal=";
            std::size_t basis_at = line.find(" basis=");
            std::size_t error_at = line.find(" error=");
            if (line.rfind(prefix, 0) != 0 || basis_at == std::string::npos ||
                error_at == std::string::npos || error_at < basis_at)
                continue; // not one of our trailers
            SweepFailure f;
            f.signal_id = line.substr(sizeof(prefix) - 1, basis_at - (sizeof(prefix) - 1));
            f.basis = line.substr(basis_at + 7, error_at - (basis_at + 7));
            f.message = line.substr(error_at + 7);
            r.failures.push_back(std::move(f));
            continue;
        }
        if (!saw_header) {
            if (line != csv_header)
                fail(Errc::parse_error, "unexpected CSV header: " + line);
            saw_header = true;
            continue;
        }
        std::vector<std::string> cols = split(line, ',');
        if (cols.size() != 8) fail(Errc::parse_error, "malformed CSV row: " + line);
        SweepRecord rec;
        rec.dataset = cols[0];
        rec.signal_id = cols[1];
        rec.basis = cols[2];
        rec.method = cols[3];
        try {
            rec.C = std::stod(cols[4]);
            rec.M = std::stoll(cols[5]);
            rec.K_eff = std::stoll(cols[6]);
            rec.snr_db = parse_snr(cols[7]);
        } catch (const std::exception&) {
            fail(Errc::parse_error, "malformed CSV row: " + line);
        }
        r.records.push_back(std::move(rec));
    }
    if (!saw_header) fail(Errc::parse_error, "missing CSV header");
    return r;
}

std::vector<AggregateRow> aggregate(const std::vector<SweepRecord>& records, double cap_db) {
    if (records.empty()) fail(Errc::empty_input, "no records to aggregate");
    const std::string& dataset = records.front().dataset;
    for (const SweepRecord& r : records)
        if (r.dataset != dataset)
            throw std::invalid_argument("records span multiple datasets");

    struct Key {
        std::string basis, method;
        double C;
        bool operator==(const Key& o) const {
            return basis == o.basis && method == o.method && C == o.C;
        }
    };
    std::vector<Key> keys;
    std::vector<std::vector<double>> values;
    auto slot = [&](const Key& k) -> std::vector<double>& {
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (keys[i] == k) return values[i];
        keys.push_back(k);
        values.emplace_back();
        return values.back();
    };
    for (const SweepRecord& r : records)
        slot({r.basis, r.method, r.C}).push_back(std::min(r.snr_db, cap_db));

    std::vector<AggregateRow> out;
    out.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        std::vector<double>& v = values[i];
        double sum = 0.0;
        for (double x : v) sum += x;
        std::sort(v.begin(), v.end());
        double median = v.size() % 2 ? v[v.size() / 2]
                                     : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
        out.push_back({keys[i].basis, keys[i].method, keys[i].C, sum / double(v.size()), median,
                       v.size()});
    }
    return out;
}

std::vector<EnvelopeRow> envelope(const std::vector<AggregateRow>& agg,
                                  const std::vector<std::string>& basis_rank,
                                  const std::vector<std::string>& method_rank) {
    if (agg.empty()) fail(Errc::empty_input, "no aggregate rows");
    std::vector<EnvelopeRow> out;
    for (const std::string& m : method_rank) {
        std::vector<double> cs;
        for (const AggregateRow& a : agg)
            if (a.method == m && std::find(cs.begin(), cs.end(), a.C) == cs.end())
                cs.push_back(a.C);
        std::sort(cs.begin(), cs.end());
        for (double C : cs) {
            EnvelopeRow row;
            row.method = m;
            row.C = C;
            bool found = false;
            for (const std::string& b : basis_rank) {
                for (const AggregateRow& a : agg) {
                    if (a.method != m || a.C != C || a.basis != b) continue;
                    if (!found || a.mean_db > row.best_snr_db) {
                        row.best_snr_db = a.mean_db;
                        row.best_basis = b;
                        found = true;
                    }
                }
            }
            if (found) out.push_back(std::move(row));
        }
    }
    if (out.empty()) fail(Errc::empty_input, "no envelope rows");
    return out;
}

std::string envelope_to_csv(const std::vector<EnvelopeRow>& rows) {
    std::string out = "method,C,best_snr_db,best_basis\n";
    for (const EnvelopeRow& r : rows) {
        out += r.method;
        out += ',';
        out += fmt_g(r.C);
        out += ',';
        out += fmt_snr(r.best_snr_db);
        out += ',';
        out += r.best_basis;
        out += '\n';
    }
    return out;
}

std::vector<EnvelopeRow> envelope_from_csv(const std::string& text) {
    std::vector<EnvelopeRow> rows;
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != "method,C,best_snr_db,best_basis")
                fail(Errc::parse_error, "unexpected envelope header: " + line);
            saw_header = true;
            continue;
        }
        std::vector<std::string> cols = split(line, ',');
        if (cols.size() != 4) fail(Errc::parse_error, "malformed envelope row: " + line);
        EnvelopeRow r;
        r.method = cols[0];
        try {
            r.C = std::stod(cols[1]);
            r.best_snr_db = parse_snr(cols[2]);
        } catch (const std::exception&) {
            fail(Errc::parse_error, "malformed envelope row: " + line);
        }
        r.best_basis = cols[3];
        rows.push_back(std::move(r));
    }
    if (!saw_header) fail(Errc::parse_error, "missing envelope header");
    return rows;
}

WinReport win_regions(const std::vector<EnvelopeRow>& env, const std::string& a,
                      const std::string& b) {
    std::vector<const EnvelopeRow*> ra, rb;
    for (const EnvelopeRow& r : env) {
        if (r.method == a) ra.push_back(&r);
        if (r.method == b) rb.push_back(&r);
    }
    if (ra.empty() || rb.empty())
        fail(Errc::grid_mismatch, "methods '" + a + "' and '" + b + "' must both be present");
    if (ra.size() != rb.size())
        fail(Errc::grid_mismatch, "methods cover different grids");
    WinReport w;
    w.method_a = a;
    w.method_b = b;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        if (ra[i]->C != rb[i]->C) fail(Errc::grid_mismatch, "methods cover different grids");
        double gap = ra[i]->best_snr_db - rb[i]->best_snr_db;
        w.grid.push_back(ra[i]->C);
        w.gaps_db.push_back(gap);
        if (gap > 0.0) w.win_region.push_back(ra[i]->C);
    }
    w.max_gap_db = w.gaps_db.front();
    w.argmax_C = w.grid.front();
    for (std::size_t i = 1; i < w.gaps_db.size(); ++i)
        if (w.gaps_db[i] > w.max_gap_db) {
            w.max_gap_db = w.gaps_db[i];
            w.argmax_C = w.grid[i];
        }
    return w;
}

std::string win_report_to_json(const WinReport& w) {
    nlohmann::json j;
    j["method_a"] = w.method_a;
    j["method_b"] = w.method_b;
    j["grid"] = w.grid;
    j["gaps_db"] = w.gaps_db;
    j["win_region"] = w.win_region;
    j["max_gap_db"] = w.max_gap_db;
    j["argmax_C"] = w.argmax_C;
    return j.dump(2) + "\n";
}

std::string win_report_to_svg(const std::vector<EnvelopeRow>& env, const WinReport& w) {
    // Fixed viewport; C on a log x-axis.  Points at C <= 0 are dropped.
    const double x0 = 70, x1 = 610, y0 = 360, y1 = 30;
    struct Pt {
        double C, snr;
    };
    auto collect = [&](const std::string& m) {
        std::vector<Pt> pts;
        for (const EnvelopeRow& r : env)
            if (r.method == m && r.C > 0.0) pts.push_back({r.C, r.best_snr_db});
        return pts;
    };
    std::vector<Pt> pa = collect(w.method_a), pb = collect(w.method_b);
    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
        "viewBox=\"0 0 640 400\">\n";
    if (pa.size() < 2 || pb.size() < 2) {
        svg += "<text x=\"40\" y=\"40\">insufficient data for chart</text>\n</svg>\n";
        return svg;
    }
    double cmin = pa.front().C, cmax = pa.front().C, smax = 1e-9;
    for (const std::vector<Pt>* v : {&pa, &pb})
        for (const Pt& p : *v) {
            cmin = std::min(cmin, p.C);
            cmax = std::max(cmax, p.C);
            smax = std::max(smax, p.snr);
        }
    double lmin = std::log10(cmin), lmax = std::log10(cmax);
    if (lmax <= lmin) lmax = lmin + 1.0;
    auto px = [&](double C) { return x0 + (std::log10(C) - lmin) / (lmax - lmin) * (x1 - x0); };
    auto py = [&](double s) { return y0 - std::max(0.0, s) / smax * (y0 - y1); };
    auto polyline = [&](const std::vector<Pt>& pts, const char* color) {
        std::string s = "<polyline fill=\"none\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"2\" points=\"";
        for (const Pt& p : pts) s += fmt_fixed(px(p.C), 2) + "," + fmt_fixed(py(p.snr), 2) + " ";
        s += "\"/>\n";
        return s;
    };
    svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    svg += "<line x1=\"70\" y1=\"360\" x2=\"610\" y2=\"360\" stroke=\"black\"/>\n";
    svg += "<line x1=\"70\" y1=\"30\" x2=\"70\" y2=\"360\" stroke=\"black\"/>\n";
    for (const Pt& p : pa) {
        svg += "<line x1=\"" + fmt_fixed(px(p.C), 2) + "\" y1=\"360\" x2=\"" + fmt_fixed(px(p.C), 2) +
               "\" y2=\"364\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt_fixed(px(p.C), 2) +
               "\" y=\"378\" font-size=\"10\" text-anchor=\"middle\">" + fmt_g(p.C) + "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        double s = smax * i / 4.0;
        svg += "<text x=\"64\" y=\"" + fmt_fixed(py(s) + 4, 2) +
               "\" font-size=\"10\" text-anchor=\"end\">" + fmt_fixed(s, 1) + "</text>\n";
    }
    svg += polyline(pa, "#1f77b4");
    svg += polyline(pb, "#d62728");
    svg += "<text x=\"80\" y=\"20\" font-size=\"12\" fill=\"#1f77b4\">" + w.method_a + "</text>\n";
    svg += "<text x=\"130\" y=\"20\" font-size=\"12\" fill=\"#d62728\">" + w.method_b + "</text>\n";
    svg += "<text x=\"340\" y=\"395\" font-size=\"11\" text-anchor=\"middle\">compression factor C"
           "</text>\n";
    svg += "<text x=\"16\" y=\"195\" font-size=\"11\" transform=\"rotate(-90 16 195)\">SNR (dB)"
           "</text>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace sparsecap
