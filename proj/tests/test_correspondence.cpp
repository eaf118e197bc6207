#include <doctest.h>

#include <cmath>
#include <random>

#include "datasets.hpp"
#include "lpstat/correspondence.hpp"
#include "lpstat/errors.hpp"
#include "lpstat/lpinfor.hpp"
#include "test_support.hpp"

using namespace lpstat;

namespace {

// compare a coordinate column against a reference up to a global sign
void check_axis(const Matrix& coords, std::size_t col, const std::vector<double>& expected,
                double tol) {
    double plus = 0.0, minus = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        plus = std::max(plus, std::abs(coords(i, col) - expected[i]));
        minus = std::max(minus, std::abs(coords(i, col) + expected[i]));
    }
    CHECK(std::min(plus, minus) < tol);
}

}  // namespace

TEST_SUITE("correspondence") {

TEST_CASE("Fisher hair/eye analysis reproduces the reference coordinates") {
    auto res = correspondence_analysis(lpstat::test::fisher_table(), 2);
    REQUIRE(res.row_coords.rows() == 4);
    REQUIRE(res.col_coords.rows() == 5);
    check_axis(res.row_coords, 0, {-0.400, -0.441, 0.034, 0.703}, 0.01);
    check_axis(res.row_coords, 1, {-0.165, -0.088, 0.245, -0.134}, 0.01);
    check_axis(res.col_coords, 0, {-0.544, -0.233, -0.042, 0.589, 1.094}, 0.01);
    check_axis(res.col_coords, 1, {-0.174, -0.048, 0.208, -0.104, -0.286}, 0.01);
    CHECK(std::abs(res.inertia_share[0] + res.inertia_share[1] - 0.996) < 0.005);
}

TEST_CASE("coordinates have mass-weighted mean zero") {
    std::mt19937_64 gen(71);
    for (int rep = 0; rep < 30; ++rep) {
        ContingencyTable t(test::random_joint(gen, 3 + gen() % 5, 3 + gen() % 5));
        const std::size_t r = std::min(t.n_rows(), t.n_cols()) - 1;
        auto res = correspondence_analysis(t, r);
        for (std::size_t k = 0; k < r; ++k) {
            double rmean = 0.0, cmean = 0.0;
            for (std::size_t i = 0; i < t.n_rows(); ++i)
                rmean += res.row_mass[i] * res.row_coords(i, k);
            for (std::size_t j = 0; j < t.n_cols(); ++j)
                cmean += res.col_mass[j] * res.col_coords(j, k);
            CHECK(std::abs(rmean) < 1e-9);
            CHECK(std::abs(cmean) < 1e-9);
        }
    }
}

TEST_CASE("independence table maps every category to the origin") {
    std::mt19937_64 gen(72);
    auto rm = test::random_masses(gen, 4);
    auto cm = test::random_masses(gen, 3);
    Matrix p(4, 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 3; ++j) p(i, j) = rm[i] * cm[j];
    auto res = correspondence_analysis(ContingencyTable(p), 2);
    for (double v : res.row_coords.data()) CHECK(std::abs(v) < 1e-9);
    for (double v : res.col_coords.data()) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("total inertia equals the chi-square divergence") {
    std::mt19937_64 gen(73);
    for (int rep = 0; rep < 50; ++rep) {
        ContingencyTable t(test::random_joint(gen, 2 + gen() % 9, 2 + gen() % 9));
        auto res = correspondence_analysis(t, std::min(t.n_rows(), t.n_cols()) - 1);
        double inertia = 0.0;
        for (double s : res.singular_values) inertia += s * s;
        CHECK(std::abs(inertia - chidiv(t)) < 1e-9);
    }
}

TEST_CASE("coordinates are equivariant under category permutation") {
    std::mt19937_64 gen(74);
    Matrix p = test::random_joint(gen, 4, 5);
    auto base = correspondence_analysis(ContingencyTable(p), 3);

    const std::size_t rper[4] = {2, 0, 3, 1};
    const std::size_t cper[5] = {4, 2, 0, 1, 3};
    Matrix q(4, 5);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 5; ++j) q(i, j) = p(rper[i], cper[j]);
    auto permuted = correspondence_analysis(ContingencyTable(q), 3);

    for (std::size_t k = 0; k < 3; ++k)
        CHECK(std::abs(base.singular_values[k] - permuted.singular_values[k]) < 1e-9);
    for (std::size_t k = 0; k < 3; ++k) {
        if (base.singular_values[k] < 1e-7) continue;  // sign/rotation unstable at zero
        double plus = 0.0, minus = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            plus = std::max(plus, std::abs(permuted.row_coords(i, k) - base.row_coords(rper[i], k)));
            minus = std::max(minus, std::abs(permuted.row_coords(i, k) + base.row_coords(rper[i], k)));
        }
        CHECK(std::min(plus, minus) < 1e-8);
    }
}

TEST_CASE("counts and probabilities produce identical coordinates") {
    std::mt19937_64 gen(75);
    Matrix counts(3, 4);
    for (auto& v : counts.data()) v = static_cast<double>(1 + gen() % 50);
    auto from_counts = correspondence_analysis(ContingencyTable(counts), 2);
    Matrix probs = counts;
    double total = 0.0;
    for (double v : probs.data()) total += v;
    for (auto& v : probs.data()) v /= total;
    auto from_probs = correspondence_analysis(ContingencyTable(probs), 2);
    for (std::size_t i = 0; i < from_counts.row_coords.data().size(); ++i)
        CHECK(from_counts.row_coords.data()[i] ==
              doctest::Approx(from_probs.row_coords.data()[i]).epsilon(1e-12));
}

TEST_CASE("Goodman variant: coordinates from the log-linear interaction kernel") {
    std::mt19937_64 gen(76);
    ContingencyTable t(test::random_joint(gen, 3, 4, 0.03));
    auto res = correspondence_analysis(t, 2, CorrespondenceVariant::Goodman);
    CHECK(res.variant == CorrespondenceVariant::Goodman);
    for (std::size_t k = 0; k < 2; ++k) {
        double rmean = 0.0;
        for (std::size_t i = 0; i < t.n_rows(); ++i)
            rmean += res.row_mass[i] * res.row_coords(i, k);
        CHECK(std::abs(rmean) < 1e-9);
    }
    // 2x2 Goodman axis length equals the closed-form gamma
    Matrix p(2, 2);
    p(0, 0) = .4;
    p(0, 1) = .1;
    p(1, 0) = .2;
    p(1, 1) = .3;
    auto g2 = correspondence_analysis(ContingencyTable(p), 1, CorrespondenceVariant::Goodman);
    auto ident = two_by_two_identities(ContingencyTable(p));
    CHECK(std::abs(g2.singular_values[0] - *ident.log_odds_form) < 1e-8);
}

TEST_CASE("shape report re-exposes the coordinates and matches copula slices") {
    auto t = lpstat::test::fisher_table();
    auto res = correspondence_analysis(t, 2);
    auto rep = shape_match_report(t, 2);
    for (std::size_t i = 0; i < rep.row_vectors.data().size(); ++i)
        CHECK(rep.row_vectors.data()[i] == res.row_coords.data()[i]);

    // cross-module consistency: slice coefficients rotated into the
    // canonical axes equal the profile coordinates
    auto cm = lp_comoments(t, 4);
    auto canon = fit_canonical_copula(cm, 2);
    auto [dx, dy] = table_margins(t);
    for (std::size_t i = 0; i < dx.size(); ++i) {
        auto sc = canon.slice_coeffs(dx.mid()[i]);
        for (std::size_t k = 0; k < 2; ++k) {
            double proj = 0.0;
            for (std::size_t l = 0; l < sc.size(); ++l)
                proj += sc[l] * canon.right_vectors()(l, k);
            CHECK(std::abs(proj - res.row_coords(i, k)) < 1e-10);
        }
    }
}

TEST_CASE("rank bounds are validated") {
    auto t = lpstat::test::fisher_table();
    CHECK_THROWS_AS(correspondence_analysis(t, 0), DataError);
    CHECK_THROWS_AS(correspondence_analysis(t, 4), DataError);
}

}  // TEST_SUITE
