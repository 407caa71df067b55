#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "sparsecap/basis.hpp"
#include "sparsecap/errors.hpp"
#include "sparsecap/pca.hpp"
#include "sparsecap/rng.hpp"

using namespace sparsecap;

namespace {

SignalTensor random_tensor(const std::vector<std::size_t>& dims, std::uint64_t seed) {
    SignalTensor t{dims, {}, Kind::generic};
    t.values.resize(checked_count(dims));
    rng::Stream s(rng::derive(seed, 17));
    for (double& v : t.values) v = s.next_gauss();
    return t;
}

double rel_err(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

double coeff_energy(const CoefficientTensor& c) {
    double e = 0.0;
    for (std::size_t i = 0; i < c.re.size(); ++i) e += c.magnitude_sq(i);
    return e;
}

} // namespace

TEST_CASE("dct of a constant concentrates in the dc bin") {
    SignalTensor x{{4}, {1, 1, 1, 1}, Kind::generic};
    CoefficientTensor c = forward(BasisSpec::make(Family::dct), x);
    CHECK(c.re[0] == doctest::Approx(2.0).epsilon(1e-12)); // sqrt(1/4) * 4
    for (int k = 1; k < 4; ++k) CHECK(std::abs(c.re[std::size_t(k)]) < 1e-12);
    CHECK(c.source_energy == doctest::Approx(4.0));
    CHECK(c.centered_energy == doctest::Approx(4.0));
}

TEST_CASE("unitary dft of an impulse spreads mass evenly") {
    SignalTensor x{{4}, {1, 0, 0, 0}, Kind::generic};
    CoefficientTensor c = forward(BasisSpec::make(Family::dft), x);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(std::sqrt(c.magnitude_sq(k)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("dft coefficients of a real signal are conjugate symmetric") {
    SignalTensor x = random_tensor({6}, 3);
    CoefficientTensor c = forward(BasisSpec::make(Family::dft), x);
    for (std::size_t k = 1; k < 6; ++k) {
        CHECK(c.re[k] == doctest::Approx(c.re[6 - k]).epsilon(1e-10));
        CHECK(c.im[k] == doctest::Approx(-c.im[6 - k]).epsilon(1e-10));
    }
    SignalTensor back = inverse(c.basis, c);
    CHECK(rel_err(back.values, x.values) < 1e-12);
}

TEST_CASE("dft ordering groups conjugate pairs with cost 2") {
    ProgressiveOrdering ord = progressive_order(BasisSpec::make(Family::dft), {4});
    REQUIRE(ord.members.size() == 3);
    CHECK(ord.members[0] == std::vector<std::size_t>{0});
    CHECK(ord.members[1] == std::vector<std::size_t>{1, 3});
    CHECK(ord.members[2] == std::vector<std::size_t>{2});
    CHECK(ord.costs == std::vector<int>{1, 2, 1});
    CHECK(ord.coeff_count == 4);
}

TEST_CASE("dct ordering walks antidiagonals in linear order") {
    ProgressiveOrdering ord = progressive_order(BasisSpec::make(Family::dct), {2, 3});
    std::vector<std::size_t> flat;
    for (const auto& g : ord.members) {
        REQUIRE(g.size() == 1);
        flat.push_back(g[0]);
    }
    // coordinate sums: 0,1,2 on row 0 and 1,2,3 on row 1
    CHECK(flat == std::vector<std::size_t>{0, 1, 3, 2, 4, 5});
    CHECK(ord.costs == std::vector<int>(6, 1));
}

TEST_CASE("ordering costs always sum to the coefficient count") {
    for (Family f : {Family::dct, Family::dft, Family::haar, Family::db4}) {
        for (const std::vector<std::size_t>& dims :
             {std::vector<std::size_t>{16}, {8, 8}, {4, 6}, {2, 2, 4, 4}}) {
            ProgressiveOrdering ord = progressive_order(BasisSpec::make(f), dims);
            std::size_t total = 0, seen = 0;
            for (std::size_t i = 0; i < ord.members.size(); ++i) {
                total += std::size_t(ord.costs[i]);
                seen += ord.members[i].size();
            }
            CHECK(total == checked_count(dims));
            CHECK(seen == checked_count(dims));
        }
    }
}

TEST_CASE("haar of a constant keeps only the approximation coefficient") {
    SignalTensor x{{8}, std::vector<double>(8, 3.0), Kind::generic};
    CoefficientTensor c = forward(BasisSpec::make(Family::haar), x);
    CHECK(c.re[0] == doctest::Approx(3.0 * std::sqrt(8.0)).epsilon(1e-12));
    for (std::size_t k = 1; k < 8; ++k) CHECK(std::abs(c.re[k]) < 1e-12);
}

TEST_CASE("wavelet bands order coarse to fine") {
    // n=8, L=3: layout [a3 | d3 | d2 d2 | d1 d1 d1 d1]
    ProgressiveOrdering ord = progressive_order(BasisSpec::make(Family::haar), {8});
    std::vector<std::size_t> flat;
    for (const auto& g : ord.members) flat.push_back(g[0]);
    CHECK(flat == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("db4 is orthonormal on awkward lengths") {
    for (std::size_t n : {std::size_t(16), std::size_t(12), std::size_t(24)}) {
        SignalTensor x = random_tensor({n}, n);
        CoefficientTensor c = forward(BasisSpec::make(Family::db4), x);
        CHECK(coeff_energy(c) == doctest::Approx(sum_squares(x.values)).epsilon(1e-10));
        CHECK(rel_err(inverse(c.basis, c).values, x.values) < 1e-10);
    }
}

TEST_CASE("all fixed bases satisfy parseval and round trip in 3-d") {
    SignalTensor x = random_tensor({4, 4, 8}, 11);
    for (Family f : {Family::dct, Family::dft, Family::haar, Family::db4}) {
        BasisSpec b = BasisSpec::make(f);
        CoefficientTensor c = forward(b, x);
        CHECK(coeff_energy(c) == doctest::Approx(sum_squares(x.values)).epsilon(1e-10));
        CHECK(rel_err(inverse(c.basis, c).values, x.values) < 1e-10);
    }
}

TEST_CASE("separable transforms commute with axis transposition") {
    SignalTensor x = random_tensor({4, 6}, 5);
    SignalTensor xt{{6, 4}, std::vector<double>(24), Kind::generic};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 6; ++c) xt.values[c * 4 + r] = x.values[r * 6 + c];

    for (Family f : {Family::dct, Family::dft}) {
        CoefficientTensor a = forward(BasisSpec::make(f), x);
        CoefficientTensor b = forward(BasisSpec::make(f), xt);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 6; ++c) {
                CHECK(a.re[r * 6 + c] == doctest::Approx(b.re[c * 4 + r]).epsilon(1e-10));
                if (f == Family::dft)
                    CHECK(a.im[r * 6 + c] == doctest::Approx(b.im[c * 4 + r]).epsilon(1e-10));
            }
    }
}

TEST_CASE("forward is linear") {
    SignalTensor x = random_tensor({8, 8}, 21);
    SignalTensor y = random_tensor({8, 8}, 22);
    SignalTensor z = x;
    for (std::size_t i = 0; i < z.values.size(); ++i)
        z.values[i] = 2.0 * x.values[i] - 0.5 * y.values[i];

    BasisSpec b = BasisSpec::make(Family::dct);
    CoefficientTensor cx = forward(b, x), cy = forward(b, y), cz = forward(b, z);
    for (std::size_t i = 0; i < cz.re.size(); ++i)
        CHECK(cz.re[i] == doctest::Approx(2.0 * cx.re[i] - 0.5 * cy.re[i]).epsilon(1e-9));
}

TEST_CASE("wavelet level rules") {
    BasisSpec haar = BasisSpec::make(Family::haar);
    CHECK(wavelet_levels_for(haar, {64, 64}) == 4);
    CHECK(wavelet_levels_for(haar, {12, 8}) == 2);
    CHECK(wavelet_levels_for(haar, {9, 9, 32, 32}) == 0); // odd axes force the identity

    BasisSpec two = haar;
    two.levels = 2;
    CHECK(wavelet_levels_for(two, {16}) == 2);

    BasisSpec zero = haar;
    zero.levels = 0;
    CHECK_THROWS_AS(wavelet_levels_for(zero, {16}), std::invalid_argument);
    try {
        wavelet_levels_for(two, {6});
        REQUIRE(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::bad_wavelet_length);
    }
}

TEST_CASE("zero wavelet levels is the identity transform") {
    SignalTensor x = random_tensor({9, 9}, 31);
    BasisSpec b = BasisSpec::make(Family::haar);
    CoefficientTensor c = forward(b, x);
    CHECK(rel_err(c.re, x.values) < 1e-15);
}

TEST_CASE("pca basis analyzes and reconstructs within its span") {
    // samples lie in a 2-plane, so a 2-component basis is exact on them
    std::vector<SignalTensor> train;
    rng::Stream s(rng::derive(99, 0));
    std::vector<double> u{0.5, 0.5, 0.5, 0.5}, v{0.5, -0.5, 0.5, -0.5};
    for (int i = 0; i < 6; ++i) {
        SignalTensor t{{2, 2}, std::vector<double>(4), Kind::generic};
        double a = s.next_gauss(), c = s.next_gauss();
        for (int j = 0; j < 4; ++j)
            t.values[std::size_t(j)] = a * u[std::size_t(j)] + c * v[std::size_t(j)];
        train.push_back(std::move(t));
    }
    auto pca = std::make_shared<PcaBasis>(train_pca(train, 2));
    BasisSpec spec = BasisSpec::make_pca(pca, "pca:demo");

    CoefficientTensor c = forward(spec, train[0]);
    CHECK(c.re.size() == 2);
    CHECK(rel_err(inverse(c.basis, c).values, train[0].values) < 1e-9);

    ProgressiveOrdering ord = progressive_order(spec, {2, 2});
    CHECK(ord.members.size() == 2);
    CHECK(ord.costs == std::vector<int>{1, 1});

    SignalTensor wrong{{4}, {1, 2, 3, 4}, Kind::generic};
    try {
        forward(spec, wrong);
        REQUIRE(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::shape_mismatch);
    }
}

TEST_CASE("orthonormality check reports a tiny defect for every family") {
    for (Family f : {Family::dct, Family::dft, Family::haar, Family::db4})
        CHECK(orthonormality_check(BasisSpec::make(f), {8, 8}, 3, 42) < 1e-10);
}

TEST_CASE("basis token parsing") {
    CHECK(parse_basis_token("dct").family == Family::dct);
    CHECK(parse_basis_token("db4").family == Family::db4);
    CHECK(parse_basis_token("haar").label == "haar");
    try {
        parse_basis_token("dst");
        REQUIRE(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse_error);
    }
    try {
        parse_basis_token("pca:/nonexistent/file.pca");
        REQUIRE(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::io_failure);
    }
}
