#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sparsecap/errors.hpp"
#include "sparsecap/fsio.hpp"
#include "sparsecap/ndf.hpp"
#include "sparsecap/sweep.hpp"
#include "sparsecap/synth.hpp"

using namespace sparsecap;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* leaf) {
    fs::path p = fs::current_path() / leaf;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

DatasetManifest image_dataset(const fs::path& dir, std::size_t count, std::size_t hw,
                              std::uint64_t seed) {
    SynthParams sp;
    sp.count = count;
    sp.height = sp.width = hw;
    return synth_generate("image_1f", sp, seed, dir.string());
}

std::vector<BasisSpec> make_bases(std::initializer_list<Family> fams) {
    std::vector<BasisSpec> out;
    for (Family f : fams) out.push_back(BasisSpec::make(f));
    return out;
}

SweepRecord rec(const std::string& sig, const std::string& basis, const std::string& method,
                double C, double snr) {
    SweepRecord r;
    r.dataset = "d";
    r.signal_id = sig;
    r.basis = basis;
    r.method = method;
    r.C = C;
    r.M = 1;
    r.K_eff = 1;
    r.snr_db = snr;
    return r;
}

} // namespace

TEST_CASE("sweep emits one record per cell") {
    fs::path dir = scratch_dir("tmp_sweep_cells");
    DatasetManifest ds = image_dataset(dir, 2, 16, 3);
    std::vector<double> grid{0.01, 0.05, 0.1, 0.5, 1.0};
    SweepResult r =
        run_sweep(ds, make_bases({Family::dct, Family::dft}), {"tc", "sc1", "sc4"}, grid);
    CHECK(r.records.size() == 2 * 2 * 3 * 5);
    CHECK(r.failures.empty());

    SUBCASE("records are ordered signal, basis, method, C") {
        const auto& v = r.records;
        CHECK(v[0].signal_id <= v.back().signal_id);
        CHECK(v[0].basis == "dct");
        CHECK(v[0].method == "tc");
        for (std::size_t i = 0; i < 5; ++i) CHECK(v[i].C == grid[i]);
        CHECK(v[5].method == "sc1");
        CHECK(v[15].basis == "dft");
        CHECK(v[30].signal_id != v[0].signal_id);
    }
    SUBCASE("complete bases are lossless at C=1 for tc and sc1") {
        for (const SweepRecord& x : r.records) {
            if (x.C == 1.0 && (x.method == "tc" || x.method == "sc1"))
                CHECK(std::isinf(x.snr_db));
            if (x.C == 1.0 && x.method == "sc4") CHECK(std::isfinite(x.snr_db));
        }
    }
    SUBCASE("budgets match round(C*N)") {
        for (const SweepRecord& x : r.records)
            CHECK(x.M == llround(x.C * 256.0));
    }
}

TEST_CASE("a constant image is captured by one dct measurement") {
    fs::path dir = scratch_dir("tmp_sweep_const");
    write_ndf((dir / "c.ndf").string(),
              {{4, 4}, std::vector<double>(16, 2.5), Kind::image});
    atomic_write_file((dir / "manifest.json").string(),
                      R"({"name":"const","lightfield_grid":null,"entries":[
                          {"path":"c.ndf","role":"test","kind":"image"}]})");
    DatasetManifest ds = load_manifest((dir / "manifest.json").string());
    SweepResult r = run_sweep(ds, make_bases({Family::dct}), {"tc"}, {0.0625});
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].M == 1);
    CHECK(std::isinf(r.records[0].snr_db));
}

TEST_CASE("csv round trip is lossless") {
    fs::path dir = scratch_dir("tmp_sweep_csv");
    DatasetManifest ds = image_dataset(dir, 2, 8, 9);
    SweepResult r = run_sweep(ds, make_bases({Family::dct, Family::haar}), {"tc", "sc1"},
                              {0.125, 1.0});
    std::string csv = sweep_to_csv(r);
    CHECK(csv.rfind("dataset,signal_id,basis,method,C,M,K_eff,snr_db\n", 0) == 0);
    CHECK(csv.find("inf") != std::string::npos);

    SweepResult back = sweep_from_csv(csv);
    CHECK(sweep_to_csv(back) == csv);
    REQUIRE(back.records.size() == r.records.size());
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        CHECK(back.records[i].signal_id == r.records[i].signal_id);
        CHECK(back.records[i].M == r.records[i].M);
    }
}

TEST_CASE("csv parser rejects junk") {
    try {
        sweep_from_csv("nope\n");
        REQUIRE(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse_error);
    }
    try {
        sweep_from_csv("dataset,signal_id,basis,method,C,M,K_eff,snr_db\na,b,c\n");
        REQUIRE(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse_error);
    }
}

TEST_CASE("load failures become trailers, not aborts") {
    fs::path dir = scratch_dir("tmp_sweep_fail");
    write_ndf((dir / "good.ndf").string(), {{2, 2}, {1, 2, 3, 4}, Kind::image});
    atomic_write_file((dir / "manifest.json").string(),
                      R"({"name":"partial","lightfield_grid":null,"entries":[
                          {"path":"good.ndf","role":"test","kind":"image"},
                          {"path":"missing.ndf","role":"train","kind":"image"}]})");
    // the probe skips train entries, so the manifest loads; flip it to test
    DatasetManifest ds = load_manifest((dir / "manifest.json").string());
    ds.entries[1].role = Role::test;

    SweepResult r = run_sweep(ds, make_bases({Family::dct}), {"tc"}, {1.0});
    CHECK(r.records.size() == 1);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].signal_id == "missing.ndf");
    CHECK(r.failures[0].basis == "-");

    std::string csv = sweep_to_csv(r);
    CHECK(csv.find("# failed signal=missing.ndf") != std::string::npos);
    SweepResult back = sweep_from_csv(csv);
    REQUIRE(back.failures.size() == 1);
    CHECK(back.failures[0].signal_id == "missing.ndf");
}

TEST_CASE("sweep output is identical across thread counts") {
    fs::path dir = scratch_dir("tmp_sweep_jobs");
    DatasetManifest ds = image_dataset(dir, 6, 16, 21);
    std::vector<double> grid{0.01, 0.1, 1.0};
    SweepOptions one, four;
    one.jobs = 1;
    four.jobs = 4;
    auto bases = make_bases({Family::dct, Family::dft, Family::haar});
    std::string a = sweep_to_csv(run_sweep(ds, bases, {"tc", "sc1", "sc4"}, grid, one));
    std::string b = sweep_to_csv(run_sweep(ds, bases, {"tc", "sc1", "sc4"}, grid, four));
    CHECK(a == b);
}

TEST_CASE("center subtraction applies only to lightfields") {
    fs::path lf_dir = scratch_dir("tmp_sweep_lf");
    SynthParams sp;
    sp.count = 1;
    sp.grid_rows = sp.grid_cols = 3;
    sp.height = sp.width = 8;
    sp.disparity = 1.0;
    DatasetManifest lf = synth_generate("lightfield", sp, 5, lf_dir.string());

    SweepOptions plain, cs;
    cs.center_subtract = true;
    auto bases = make_bases({Family::dct});
    std::string a = sweep_to_csv(run_sweep(lf, bases, {"tc"}, {0.1}, plain));
    std::string b = sweep_to_csv(run_sweep(lf, bases, {"tc"}, {0.1}, cs));
    CHECK(a != b); // subtraction changes the energy layout

    fs::path im_dir = scratch_dir("tmp_sweep_im");
    DatasetManifest im = image_dataset(im_dir, 1, 8, 5);
    std::string c = sweep_to_csv(run_sweep(im, bases, {"tc"}, {0.1}, plain));
    std::string d = sweep_to_csv(run_sweep(im, bases, {"tc"}, {0.1}, cs));
    CHECK(c == d); // flag is a no-op for images
}

TEST_CASE("grid validation") {
    fs::path dir = scratch_dir("tmp_sweep_grid");
    DatasetManifest ds = image_dataset(dir, 1, 4, 2);
    auto bases = make_bases({Family::dct});
    CHECK_THROWS_AS(run_sweep(ds, bases, {"tc"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(ds, bases, {"tc"}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(ds, bases, {"tc"}, {0.5, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(ds, bases, {"tc"}, {0.5, 1.5}), std::invalid_argument);
    try {
        run_sweep(ds, bases, {"xx"}, {0.5});
        REQUIRE(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse_error);
    }
}

TEST_CASE("aggregate caps infinities and averages per cell") {
    std::vector<SweepRecord> rs{
        rec("s0", "dct", "tc", 0.1, std::numeric_limits<double>::infinity()),
        rec("s1", "dct", "tc", 0.1, 100.0),
        rec("s2", "dct", "tc", 0.1, 200.0),
        rec("s0", "dct", "sc1", 0.1, 10.0),
    };
    std::vector<AggregateRow> agg = aggregate(rs, 300.0);
    REQUIRE(agg.size() == 2);
    CHECK(agg[0].basis == "dct");
    CHECK(agg[0].method == "tc");
    CHECK(agg[0].count == 3);
    CHECK(agg[0].mean_db == doctest::Approx(200.0));
    CHECK(agg[0].median_db == doctest::Approx(200.0));
    CHECK(agg[1].method == "sc1");
    CHECK(agg[1].count == 1);

    try {
        aggregate({}, 300.0);
        REQUIRE(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_input);
    }

    std::vector<SweepRecord> mixed = rs;
    mixed[1].dataset = "other";
    CHECK_THROWS_AS(aggregate(mixed, 300.0), std::invalid_argument);
}

TEST_CASE("envelope picks the best basis and honors rank ties") {
    std::vector<SweepRecord> rs{
        rec("s0", "dct", "tc", 0.1, 10.0),  rec("s0", "haar", "tc", 0.1, 12.0),
        rec("s0", "dct", "tc", 0.5, 20.0),  rec("s0", "haar", "tc", 0.5, 20.0),
        rec("s0", "dct", "sc1", 0.1, 11.0), rec("s0", "haar", "sc1", 0.1, 9.0),
    };
    std::vector<AggregateRow> agg = aggregate(rs, 300.0);
    std::vector<EnvelopeRow> env = envelope(agg, {"dct", "haar"}, {"tc", "sc1"});
    REQUIRE(env.size() == 3);
    CHECK(env[0].method == "tc");
    CHECK(env[0].C == 0.1);
    CHECK(env[0].best_basis == "haar");
    CHECK(env[0].best_snr_db == doctest::Approx(12.0));
    CHECK(env[1].C == 0.5);
    CHECK(env[1].best_basis == "dct"); // exact tie goes to the earlier listed basis
    CHECK(env[2].method == "sc1");
    CHECK(env[2].best_basis == "dct");

    std::string csv = envelope_to_csv(env);
    CHECK(csv.rfind("method,C,best_snr_db,best_basis\n", 0) == 0);
    std::vector<EnvelopeRow> back = envelope_from_csv(csv);
    REQUIRE(back.size() == env.size());
    CHECK(back[1].best_basis == "dct");
    CHECK(back[0].best_snr_db == doctest::Approx(12.0));
}

TEST_CASE("win regions compare two methods on a shared grid") {
    std::vector<EnvelopeRow> env{
        {"sc4", 0.01, 5.0, "dct"}, {"sc4", 0.1, 12.0, "dct"}, {"sc4", 0.5, 18.0, "dct"},
        {"tc", 0.01, 6.0, "dct"},  {"tc", 0.1, 9.0, "dct"},   {"tc", 0.5, 18.5, "dct"},
    };
    WinReport w = win_regions(env, "sc4", "tc");
    CHECK(w.method_a == "sc4");
    CHECK(w.grid == std::vector<double>{0.01, 0.1, 0.5});
    REQUIRE(w.gaps_db.size() == 3);
    CHECK(w.gaps_db[0] == doctest::Approx(-1.0));
    CHECK(w.gaps_db[1] == doctest::Approx(3.0));
    CHECK(w.win_region == std::vector<double>{0.1});
    CHECK(w.max_gap_db == doctest::Approx(3.0));
    CHECK(w.argmax_C == doctest::Approx(0.1));

    SUBCASE("identical curves give an empty win region") {
        WinReport z = win_regions(env, "sc4", "sc4");
        CHECK(z.win_region.empty());
        CHECK(z.max_gap_db == 0.0);
        CHECK(z.argmax_C == doctest::Approx(0.01)); // earliest grid point
    }
    SUBCASE("mismatched grids are rejected") {
        std::vector<EnvelopeRow> bad = env;
        bad.pop_back();
        try {
            win_regions(bad, "sc4", "tc");
            REQUIRE(false);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::grid_mismatch);
        }
        try {
            win_regions(env, "sc4", "sc1"); // absent method
            REQUIRE(false);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::grid_mismatch);
        }
    }
    SUBCASE("json and svg render") {
        std::string j = win_report_to_json(w);
        CHECK(j.find("\"max_gap_db\"") != std::string::npos);
        CHECK(j.find("\"win_region\"") != std::string::npos);
        std::string svg = win_report_to_svg(env, w);
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(svg.find("polyline") != std::string::npos);
    }
}

TEST_CASE("sc4 beats tc on shifted multiview content at small C") {
    // the one-hypothesis experiment in miniature: multiview parallax spreads
    // energy across many transform bins, which hurts prefix capture far more
    // than magnitude capture
    fs::path dir = scratch_dir("tmp_sweep_gap");
    SynthParams sp;
    sp.count = 4;
    sp.grid_rows = sp.grid_cols = 5;
    sp.height = sp.width = 16;
    sp.disparity = 1.0;
    DatasetManifest ds = synth_generate("lightfield", sp, 13, dir.string());

    SweepOptions opts;
    opts.center_subtract = true;
    std::vector<double> grid{0.01, 0.02, 0.05, 0.1};
    SweepResult r =
        run_sweep(ds, make_bases({Family::dct, Family::dft}), {"tc", "sc4"}, grid, opts);
    std::vector<EnvelopeRow> env =
        envelope(aggregate(r.records, 300.0), {"dct", "dft"}, {"tc", "sc4"});
    WinReport w = win_regions(env, "sc4", "tc");
    CHECK_FALSE(w.win_region.empty());
    CHECK(w.max_gap_db > 0.0);
}
