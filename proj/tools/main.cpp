#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparsecap/cs.hpp"
#include "sparsecap/errors.hpp"
#include "sparsecap/fsio.hpp"
#include "sparsecap/pca.hpp"
#include "sparsecap/selftest.hpp"
#include "sparsecap/sweep.hpp"
#include "sparsecap/synth.hpp"

namespace {

using namespace sparsecap;

// Exit codes: 0 ok, 1 usage, 2 data error, 3 internal.
constexpr int exit_ok = 0, exit_usage = 1, exit_data = 2, exit_internal = 3;

[[noreturn]] void usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(exit_usage);
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        usage_error(what + " must be a nonnegative integer, got '" + s + "'");
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size())
        usage_error(what + " out of range: '" + s + "'");
    return v;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("SPARSECAP_SEED");
    if (!env || !*env) return 0;
    return parse_u64(env, "SPARSECAP_SEED");
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        usage_error(what + ": bad number '" + s + "'");
    }
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> grid;
    for (const std::string& tok : split_csv(s)) grid.push_back(parse_double(tok, "--grid"));
    if (grid.empty()) usage_error("--grid must list at least one value");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
            usage_error("--grid values must lie in [0, 1]");
        if (i > 0 && grid[i] <= grid[i - 1]) usage_error("--grid must be strictly increasing");
    }
    return grid;
}

void parse_pair(const std::string& s, std::size_t& a, std::size_t& b, const std::string& what) {
    std::size_t pos = s.find('x');
    if (pos == std::string::npos || pos == 0 || pos + 1 >= s.size())
        usage_error(what + " must look like 64x64, got '" + s + "'");
    a = std::size_t(parse_u64(s.substr(0, pos), what));
    b = std::size_t(parse_u64(s.substr(pos + 1), what));
    if (a == 0 || b == 0) usage_error(what + " extents must be >= 1");
}

void check_basis_tokens(const std::vector<std::string>& tokens) {
    if (tokens.empty()) usage_error("--bases must list at least one basis");
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        bool known = t == "dct" || t == "dft" || t == "haar" || t == "db4" ||
                     (t.rfind("pca:", 0) == 0 && t.size() > 4);
        if (!known) usage_error("unknown basis '" + t + "' (want dct, dft, haar, db4, pca:<path>)");
        for (std::size_t j = 0; j < i; ++j)
            if (tokens[j] == t) usage_error("duplicate basis '" + t + "'");
    }
}

void check_method_tokens(const std::vector<std::string>& tokens) {
    if (tokens.empty()) usage_error("--methods must list at least one method");
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        if (t != "tc" && t != "sc1" && t != "sc4")
            usage_error("unknown method '" + t + "' (want tc, sc1, sc4)");
        for (std::size_t j = 0; j < i; ++j)
            if (tokens[j] == t) usage_error("duplicate method '" + t + "'");
    }
}

template <class F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

// First-appearance orders drive envelope tie-breaks and output ordering.
void appearance_ranks(const std::vector<SweepRecord>& records, std::vector<std::string>& bases,
                      std::vector<std::string>& methods) {
    for (const SweepRecord& r : records) {
        if (std::find(bases.begin(), bases.end(), r.basis) == bases.end())
            bases.push_back(r.basis);
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
            methods.push_back(r.method);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparsecap: best-case capture effectiveness of progressive vs sparsity coding"};
    app.require_subcommand(1);
    std::uint64_t seed = default_seed();

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset with manifest");
    std::string sy_kind, sy_out, sy_size = "64x64", sy_grid = "9x9";
    SynthParams sp;
    synth->add_option("--kind", sy_kind, "image_1f | cartoon | video | multispectral | lightfield")
        ->required();
    synth->add_option("--out", sy_out, "output directory")->required();
    synth->add_option("--count", sp.count, "number of signals");
    synth->add_option("--size", sy_size, "spatial size HxW (default 64x64)");
    synth->add_option("--frames", sp.frames, "video frames");
    synth->add_option("--bands", sp.bands, "multispectral bands");
    synth->add_option("--grid", sy_grid, "lightfield view grid RxC (default 9x9)");
    synth->add_option("--disparity", sp.disparity, "lightfield disparity, px per view");
    synth->add_option("--cells", sp.cells, "cartoon Voronoi cells");
    synth->add_option("--noise-sigma", sp.noise_sigma, "video noise sigma");
    synth->add_option("--train-count", sp.train_count, "leading signals marked role=train");
    synth->add_option("--seed", seed, "master seed (SPARSECAP_SEED overrides the default)");

    // train-pca
    auto* train = app.add_subcommand("train-pca", "learn a PCA basis from the train split");
    std::string tp_manifest, tp_out;
    std::size_t tp_components = 0;
    train->add_option("--manifest", tp_manifest, "dataset manifest")->required();
    train->add_option("--components", tp_components, "number of components")->required();
    train->add_option("--out", tp_out, "output basis file")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run the SNR vs compression grid");
    std::string sw_manifest, sw_bases, sw_out;
    std::string sw_methods = "tc,sc1,sc4";
    std::string sw_grid = "0.001,0.002,0.005,0.01,0.02,0.05,0.1,0.2,0.5,1.0";
    SweepOptions sw_opts;
    sweep->add_option("--manifest", sw_manifest, "dataset manifest")->required();
    sweep->add_option("--bases", sw_bases, "comma list: dct,dft,haar,db4,pca:<path>")->required();
    sweep->add_option("--methods", sw_methods, "comma list of tc,sc1,sc4");
    sweep->add_option("--grid", sw_grid, "comma list of compression factors in [0,1]");
    sweep->add_option("--out", sw_out, "output CSV")->required();
    sweep->add_flag("--center-subtract", sw_opts.center_subtract,
                    "subtract the center view from lightfield signals");
    sweep->add_option("--jobs", sw_opts.jobs, "worker threads (default: hardware)");

    // envelope
    auto* env = app.add_subcommand("envelope", "best-basis envelope from a sweep CSV");
    std::string ev_in, ev_out;
    double ev_cap = snr_cap_db;
    env->add_option("--in", ev_in, "sweep CSV")->required();
    env->add_option("--out", ev_out, "envelope CSV")->required();
    env->add_option("--cap-db", ev_cap, "cap for infinite SNR");

    // report
    auto* rep = app.add_subcommand("report", "win-region report between two methods");
    std::string rp_in, rp_a, rp_b, rp_out, rp_svg;
    rep->add_option("--in", rp_in, "envelope CSV")->required();
    rep->add_option("--a", rp_a, "method A (the challenger)")->required();
    rep->add_option("--b", rp_b, "method B (the baseline)")->required();
    rep->add_option("--out", rp_out, "output JSON")->required();
    rep->add_option("--svg", rp_svg, "also write an SVG chart here");

    // validate-cs
    auto* cs = app.add_subcommand("validate-cs", "OMP recovery check of the M=4K rule");
    CsTrialConfig cs_cfg;
    std::string cs_out;
    cs->add_option("--n", cs_cfg.n, "signal dimension");
    cs->add_option("--k", cs_cfg.k, "sparsity");
    cs->add_option("--m", cs_cfg.m, "measurements");
    cs->add_option("--trials", cs_cfg.trials, "trial count");
    cs->add_option("--seed", seed, "master seed (SPARSECAP_SEED overrides the default)");
    cs->add_option("--noise-sigma", cs_cfg.noise_sigma, "measurement noise sigma");
    cs->add_option("--out", cs_out, "output JSON (stdout when omitted)");

    // selftest
    auto* self = app.add_subcommand("selftest", "run the built-in invariant suite");
    self->add_option("--seed", seed, "master seed (SPARSECAP_SEED overrides the default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }

    if (*synth) {
        parse_pair(sy_size, sp.height, sp.width, "--size");
        parse_pair(sy_grid, sp.grid_rows, sp.grid_cols, "--grid");
        return guarded([&] {
            DatasetManifest ds = synth_generate(sy_kind, sp, seed, sy_out);
            std::cout << sy_out << "/manifest.json (" << ds.entries.size() << " signals)\n";
            return exit_ok;
        });
    }

    if (*train) {
        if (tp_components < 1) usage_error("--components must be >= 1");
        return guarded([&] {
            DatasetManifest ds = load_manifest(tp_manifest);
            std::vector<SignalTensor> samples;
            for (const ManifestEntry& e : ds.entries)
                if (e.role == Role::train) samples.push_back(load_entry_tensor(ds, e));
            PcaBasis b = train_pca(samples, tp_components);
            save_pca(tp_out, b);
            std::cout << tp_out << ": " << b.n_components() << " components"
                      << (b.rank_deficient ? " (rank deficient)" : "") << "\n";
            return exit_ok;
        });
    }

    if (*sweep) {
        std::vector<std::string> basis_tokens = split_csv(sw_bases);
        std::vector<std::string> methods = split_csv(sw_methods);
        check_basis_tokens(basis_tokens);
        check_method_tokens(methods);
        std::vector<double> grid = parse_grid(sw_grid);
        return guarded([&] {
            std::vector<BasisSpec> bases;
            for (const std::string& t : basis_tokens) bases.push_back(parse_basis_token(t));
            DatasetManifest ds = load_manifest(sw_manifest);
            SweepResult r = run_sweep(ds, bases, methods, grid, sw_opts);
            atomic_write_file(sw_out, sweep_to_csv(r));
            std::cout << sw_out << ": " << r.records.size() << " records, " << r.failures.size()
                      << " failures\n";
            return exit_ok;
        });
    }

    if (*env) {
        return guarded([&] {
            SweepResult r = sweep_from_csv(read_file_bytes(ev_in));
            std::vector<AggregateRow> agg = aggregate(r.records, ev_cap);
            std::vector<std::string> basis_rank, method_rank;
            appearance_ranks(r.records, basis_rank, method_rank);
            atomic_write_file(ev_out, envelope_to_csv(envelope(agg, basis_rank, method_rank)));
            std::cout << ev_out << "\n";
            return exit_ok;
        });
    }

    if (*rep) {
        check_method_tokens({rp_a});
        check_method_tokens({rp_b});
        return guarded([&] {
            std::vector<EnvelopeRow> rows = envelope_from_csv(read_file_bytes(rp_in));
            WinReport w = win_regions(rows, rp_a, rp_b);
            atomic_write_file(rp_out, win_report_to_json(w));
            if (!rp_svg.empty()) atomic_write_file(rp_svg, win_report_to_svg(rows, w));
            std::cout << rp_out << ": max gap " << w.max_gap_db << " dB at C=" << w.argmax_C
                      << "\n";
            return exit_ok;
        });
    }

    if (*cs) {
        if (cs_cfg.n < 1 || cs_cfg.k > cs_cfg.m || cs_cfg.m > cs_cfg.n)
            usage_error("need k <= m <= n with n >= 1");
        if (cs_cfg.trials < 1) usage_error("--trials must be >= 1");
        if (cs_cfg.noise_sigma < 0) usage_error("--noise-sigma must be >= 0");
        cs_cfg.seed = seed;
        return guarded([&] {
            CsReport r = run_cs_trials(cs_cfg);
            std::string json = cs_report_to_json(r);
            if (cs_out.empty()) std::cout << json;
            else {
                atomic_write_file(cs_out, json);
                std::cout << cs_out << ": success rate " << r.success_rate << "\n";
            }
            return exit_ok;
        });
    }

    if (*self) {
        return guarded([&] {
            SelfTestResult r = run_selftest(seed);
            for (const SelfTestCheck& c : r.checks) {
                if (c.ok) std::cout << "ok   " << c.name << "\n";
                else std::cout << "FAIL " << c.name << ": " << c.detail << "\n";
            }
            std::cout << (r.all_ok ? "selftest passed" : "selftest FAILED") << "\n";
            return r.all_ok ? exit_ok : exit_internal;
        });
    }

    return exit_usage;
}
