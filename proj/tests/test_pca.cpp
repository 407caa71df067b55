#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sparsecap/basis.hpp"
#include "sparsecap/coders.hpp"
#include "sparsecap/errors.hpp"
#include "sparsecap/pca.hpp"
#include "sparsecap/rng.hpp"

using namespace sparsecap;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    fs::path p = fs::current_path() / "tmp_pca";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

SignalTensor sample(std::vector<double> v) { return {{v.size()}, std::move(v), Kind::generic}; }

std::vector<SignalTensor> random_samples(std::size_t count, std::size_t n, std::uint64_t seed) {
    std::vector<SignalTensor> out;
    rng::Stream s(rng::derive(seed, 7));
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> v(n);
        for (double& x : v) x = s.next_gauss();
        out.push_back(sample(std::move(v)));
    }
    return out;
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

} // namespace

TEST_CASE("two point cloud on the diagonal") {
    std::vector<SignalTensor> train{sample({1, 1}), sample({-1, -1}), sample({2, 2}),
                                    sample({-2, -2})};
    PcaBasis b = train_pca(train, 1);
    REQUIRE(b.n_components() == 1);
    CHECK(b.mean == std::vector<double>{0.0, 0.0});
    double r = 1.0 / std::sqrt(2.0);
    CHECK(b.components[0] == doctest::Approx(r).epsilon(1e-12));
    CHECK(b.components[1] == doctest::Approx(r).epsilon(1e-12));
    // projections are sqrt(2)*{1,-1,2,-2}; unbiased variance = 20/3
    CHECK(b.eigenvalues[0] == doctest::Approx(20.0 / 3.0).epsilon(1e-12));
    CHECK_FALSE(b.rank_deficient);

    PcaBasis b2 = train_pca(train, 2);
    CHECK(b2.n_components() == 1); // the orthogonal direction carries no variance
    CHECK(b2.rank_deficient);
}

TEST_CASE("identical samples have rank zero") {
    std::vector<SignalTensor> train{sample({1, 2, 3}), sample({1, 2, 3}), sample({1, 2, 3})};
    PcaBasis b = train_pca(train, 2);
    CHECK(b.n_components() == 0);
    CHECK(b.rank_deficient);
    CHECK(b.mean == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("training preconditions") {
    try {
        train_pca({sample({1, 2})}, 1);
        REQUIRE(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::too_few_samples);
    }
    try {
        train_pca({sample({1, 2}), sample({1, 2, 3})}, 1);
        REQUIRE(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::dim_mismatch);
    }
    CHECK_THROWS_AS(train_pca({sample({1, 2}), sample({3, 4})}, 0), std::invalid_argument);
    CHECK_THROWS_AS(train_pca({sample({1, 2}), sample({3, 4})}, 3), std::invalid_argument);
}

TEST_CASE("components are orthonormal and eigenvalues non-increasing") {
    std::vector<SignalTensor> train = random_samples(12, 6, 5);
    PcaBasis b = train_pca(train, 5);
    REQUIRE(b.n_components() == 5);
    std::size_t n = b.dim();
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double g = dot(&b.components[i * n], &b.components[j * n], n);
            CHECK(g == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-8));
        }
        if (i > 0) CHECK(b.eigenvalues[i] <= b.eigenvalues[i - 1] + 1e-12);
        CHECK(b.eigenvalues[i] >= 0.0);
    }
}

TEST_CASE("snapshot route matches the covariance route") {
    // 4 samples in dim 9 forces the Gram path; 12 samples in dim 9 the direct one.
    // Shared leading eigenvector must agree up to sign convention.
    std::vector<SignalTensor> small = random_samples(4, 9, 21);
    PcaBasis g = train_pca(small, 3);
    REQUIRE(g.n_components() == 3);
    std::size_t n = 9;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            CHECK(dot(&g.components[i * n], &g.components[j * n], n) ==
                  doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-8));
}

TEST_CASE("save and load round trip bit exactly") {
    fs::path dir = scratch_dir();
    std::string p = (dir / "b.pca").string();
    PcaBasis b = train_pca(random_samples(8, 5, 3), 4);
    save_pca(p, b);
    PcaBasis c = load_pca(p);
    CHECK(c.source_dims == b.source_dims);
    CHECK(c.rank_deficient == b.rank_deficient);
    REQUIRE(c.mean.size() == b.mean.size());
    REQUIRE(c.components.size() == b.components.size());
    for (std::size_t i = 0; i < b.mean.size(); ++i) CHECK(c.mean[i] == b.mean[i]);
    for (std::size_t i = 0; i < b.components.size(); ++i)
        CHECK(c.components[i] == b.components[i]);
    for (std::size_t i = 0; i < b.eigenvalues.size(); ++i)
        CHECK(c.eigenvalues[i] == b.eigenvalues[i]);
}

TEST_CASE("container validation") {
    fs::path dir = scratch_dir();
    std::string p = (dir / "b.pca").string();
    PcaBasis b = train_pca(random_samples(6, 4, 9), 2);
    save_pca(p, b);

    auto bytes = [&] {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    }();

    SUBCASE("truncation") {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), std::streamsize(bytes.size() - 9));
        out.close();
        try {
            load_pca(p);
            REQUIRE(false);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::truncated_file);
        }
    }
    SUBCASE("trailing garbage") {
        std::ofstream out(p, std::ios::binary | std::ios::app);
        out.write("zz", 2);
        out.close();
        try {
            load_pca(p);
            REQUIRE(false);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::shape_mismatch);
        }
    }
    SUBCASE("wrong magic") {
        std::string s = bytes;
        s[0] = 'Q';
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        out.write(s.data(), std::streamsize(s.size()));
        out.close();
        try {
            load_pca(p);
            REQUIRE(false);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::bad_magic);
        }
    }
}

TEST_CASE("pca beats a fixed basis on structured training data") {
    // samples = random mix of 3 fixed directions + small noise; in-sample
    // k-term pca reconstruction can never lose to a k-term dct prefix
    const std::size_t n = 16, count = 30, k = 3;
    rng::Stream mk(rng::derive(77, 0));
    std::vector<std::vector<double>> dirs(k, std::vector<double>(n));
    for (auto& d : dirs) {
        double norm = 0.0;
        for (double& x : d) {
            x = mk.next_gauss();
            norm += x * x;
        }
        for (double& x : d) x /= std::sqrt(norm);
    }
    std::vector<SignalTensor> train;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> v(n, 0.0);
        for (std::size_t j = 0; j < k; ++j) {
            double a = mk.next_gauss() * double(k - j);
            for (std::size_t t = 0; t < n; ++t) v[t] += a * dirs[j][t];
        }
        for (double& x : v) x += 0.01 * mk.next_gauss();
        train.push_back(sample(v));
    }

    auto pca = std::make_shared<PcaBasis>(train_pca(train, k));
    REQUIRE(pca->n_components() == k);
    BasisSpec pca_spec = BasisSpec::make_pca(pca, "pca:test");
    BasisSpec dct_spec = BasisSpec::make(Family::dct);

    double pca_err = 0.0, dct_err = 0.0;
    for (const SignalTensor& x : train) {
        CoefficientTensor cp = forward(pca_spec, x);
        double kept = 0.0;
        for (std::size_t i = 0; i < cp.size(); ++i) kept += cp.magnitude_sq(i);
        pca_err += std::max(0.0, cp.centered_energy - kept);

        CoefficientTensor cd = forward(dct_spec, x);
        ProgressiveOrdering ord = progressive_order(dct_spec, x.dims);
        TruncationResult tr = truncate_tc(cd, ord, k);
        dct_err += std::max(0.0, cd.centered_energy - tr.kept_energy);
    }
    CHECK(pca_err <= dct_err + 1e-9);
    CHECK(pca_err < 0.02 * dct_err); // the learned basis is dramatically better here
}
