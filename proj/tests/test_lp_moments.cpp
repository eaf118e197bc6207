#include <doctest.h>

#include <cmath>
#include <random>

#include "lpstat/comoments.hpp"
#include "lpstat/errors.hpp"
#include "lpstat/moments.hpp"
#include "lpstat/rng.hpp"
#include "test_support.hpp"

using namespace lpstat;

TEST_SUITE("lp_moments") {

TEST_CASE("population moments: uniform and normal reference values") {
    auto u = population_lp_moments_named("uniform", 6);
    CHECK(std::abs(u[0] - 1.0 / (2.0 * std::sqrt(3.0))) < 1e-6);
    for (int j = 1; j < 6; ++j) CHECK(std::abs(u[j]) < 1e-9);

    auto nrm = population_lp_moments_named("normal", 6);
    CHECK(std::abs(nrm[0] - std::sqrt(3.0 / M_PI)) < 1e-5);
    CHECK(std::abs(nrm[1]) < 1e-9);
    CHECK(std::abs(nrm[2] - 0.183) < 0.01);
}

TEST_CASE("population moments: exact sums for Poisson(2)") {
    auto p = population_lp_moments_named("poisson2", 6);
    const double expected[6] = {1.371, 0.205, 0.225, 0.110, 0.103, 0.073};
    for (int j = 0; j < 6; ++j) CHECK(std::abs(p[j] - expected[j]) < 0.01);
}

TEST_CASE("order-statistic form of LP(1)") {
    // hand evaluation for (1,2,3): sqrt(6)/3
    CHECK(lp1_order_stat(Sample{{1, 2, 3}}) == doctest::Approx(std::sqrt(6.0) / 3.0).epsilon(1e-12));

    Rng rng(8);
    std::vector<double> v(200);
    for (auto& x : v) x = rng.normal();
    Sample s{v};
    auto mv = lp_moments(s, 1);
    CHECK(lp1_order_stat(s) == doctest::Approx(mv.coeffs[0]).epsilon(1e-10));

    // shift invariance
    std::vector<double> shifted = v;
    for (auto& x : shifted) x += 100.0;
    CHECK(lp1_order_stat(Sample{shifted}) == doctest::Approx(lp1_order_stat(s)).epsilon(1e-9));

    // sorted vs shuffled
    std::vector<double> shuffled = v;
    std::mt19937_64 gen(1);
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CHECK(lp1_order_stat(Sample{shuffled}) == doctest::Approx(lp1_order_stat(s)).epsilon(1e-12));

    CHECK_THROWS_AS(lp1_order_stat(Sample{{1, 1, 2}}), DataError);
}

TEST_CASE("variance decomposition: Parseval with the full basis") {
    std::mt19937_64 gen(12);
    for (int rep = 0; rep < 100; ++rep) {
        auto d = test::random_dist(gen, 2 + gen() % 19);
        auto b = build_scores(d, d.size() - 1);
        auto [var, ss] = variance_decomposition(d, b);
        CHECK(var == doctest::Approx(ss).epsilon(1e-9));
    }
    // Bernoulli single term: Var = p(1-p) = LP(1)^2
    auto bern = DiscreteDist::from_masses({0, 1}, {0.3, 0.7});
    auto b = build_scores(bern, 1);
    auto [var, ss] = variance_decomposition(bern, b);
    CHECK(var == doctest::Approx(0.21).epsilon(1e-12));
    CHECK(ss == doctest::Approx(0.21).epsilon(1e-12));
}

TEST_CASE("truncated sum stays below the variance (Bessel)") {
    std::mt19937_64 gen(13);
    for (int rep = 0; rep < 30; ++rep) {
        auto d = test::random_dist(gen, 8);
        auto bfull = build_scores(d, 7);
        auto full = lp_moments(d, bfull, 7);
        double run = 0.0;
        for (std::size_t m = 1; m <= 7; ++m) {
            run += full.coeffs[m - 1] * full.coeffs[m - 1];
            CHECK(run <= full.var + 1e-9);
        }
    }
}

TEST_CASE("D'Agostino statistic and the short-tail flag") {
    Rng rng(1234);
    std::vector<double> nv(100000);
    for (auto& x : nv) x = rng.normal();
    auto rn = dagostino(Sample{nv});
    CHECK(std::abs(rn.statistic - 0.977) < 0.005);
    // the published 0.95 cutoff sits just below 3/pi = 0.9549, so exact
    // normal data lands on the short-tailed side of it
    CHECK(rn.short_tailed == (rn.statistic * rn.statistic > 0.95));

    std::vector<double> uv(100000);
    for (auto& x : uv) x = rng.uniform();
    auto ru = dagostino(Sample{uv});
    CHECK(ru.short_tailed);  // |LP(1;Z)|^2 near 0.9992

    // heavy tails: t(2) draws via normal/chi ratio
    std::vector<double> tv(100000);
    for (auto& x : tv) {
        const double z = rng.normal();
        const double c = rng.normal(), c2 = rng.normal();
        x = z / std::sqrt((c * c + c2 * c2) / 2.0);
    }
    auto rt = dagostino(Sample{tv});
    CHECK(rt.statistic < 0.95);
    CHECK_FALSE(rt.short_tailed);

    CHECK_THROWS_AS(dagostino(Sample{{2, 2, 2, 2}}), DataError);
}

TEST_CASE("comoments vanish on independent product tables") {
    std::mt19937_64 gen(14);
    auto rowm = test::random_masses(gen, 4);
    auto colm = test::random_masses(gen, 5);
    Matrix p(4, 5);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 5; ++j) p(i, j) = rowm[i] * colm[j];
    auto cm = lp_comoments(ContingencyTable(p), 4);
    for (double v : cm.entries.data()) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("comoments are invariant under monotone relabeling of margins") {
    std::mt19937_64 gen(15);
    Matrix p = test::random_joint(gen, 5, 4);
    Matrix counts(5, 4);
    const int scale = 2000;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            counts(i, j) = static_cast<double>(std::llround(p(i, j) * scale));

    // the same joint law as paired observations with monotone-relabeled atoms
    PairedSample s;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const auto reps = static_cast<std::size_t>(counts(i, j));
            for (std::size_t r = 0; r < reps; ++r) {
                s.x.push_back(std::exp(static_cast<double>(i)));
                s.y.push_back(-1.0 / (1.0 + static_cast<double>(j)));  // increasing in j
            }
        }
    auto cm_table = lp_comoments(ContingencyTable(counts), 3);
    auto cm_pairs = lp_comoments(s, 3);
    for (std::size_t i = 0; i < cm_table.entries.data().size(); ++i)
        CHECK(std::abs(cm_table.entries.data()[i] - cm_pairs.entries.data()[i]) < 1e-10);
}

TEST_CASE("Genest constructions reach exactly 1 and -1") {
    for (double p = 0.1; p < 0.95; p += 0.1) {
        Matrix diag(2, 2);
        diag(0, 0) = p;
        diag(1, 1) = 1.0 - p;
        CHECK(spearman_lp11(ContingencyTable(diag)) == doctest::Approx(1.0).epsilon(1e-12));
        Matrix anti(2, 2);
        anti(0, 1) = p;
        anti(1, 0) = 1.0 - p;
        CHECK(spearman_lp11(ContingencyTable(anti)) == doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("LP[1,1] tracks classical Spearman for tie-free data") {
    Rng rng(77);
    PairedSample s;
    s.x.resize(100);
    s.y.resize(100);
    for (std::size_t i = 0; i < 100; ++i) {
        s.x[i] = rng.normal();
        s.y[i] = 0.7 * s.x[i] + rng.normal();
    }
    const double lp11 = spearman_lp11(s);
    CHECK(std::abs(lp11) <= 1.0 + 1e-12);

    // classical Spearman via ranks
    auto rank = [](std::vector<double> v) {
        std::vector<std::size_t> order(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[order[i]] = static_cast<double>(i + 1);
        return r;
    };
    auto rx = rank(s.x), ry = rank(s.y);
    double mx = 50.5, sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - mx);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - mx) * (ry[i] - mx);
    }
    CHECK(lp11 == doctest::Approx(sxy / std::sqrt(sxx * syy)).epsilon(0.02));

    // perfectly concordant pairs
    PairedSample conc;
    for (int i = 0; i < 100; ++i) {
        conc.x.push_back(i);
        conc.y.push_back(i);
    }
    CHECK(spearman_lp11(conc) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("covariance decomposition on random finite joints") {
    std::mt19937_64 gen(16);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t rows = 2 + gen() % 11, cols = 2 + gen() % 11;
        ContingencyTable t(test::random_joint(gen, rows, cols));
        auto [cov, decomp] = covariance_decomposition(t);
        CHECK(cov == doctest::Approx(decomp).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("covariance decomposition: independent table and binary phi") {
    Matrix indep(2, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) indep(i, j) = (i + 1) / 3.0 * ((j + 1) / 6.0);
    auto [cov0, dec0] = covariance_decomposition(ContingencyTable(indep));
    CHECK(std::abs(cov0) < 1e-14);
    CHECK(std::abs(dec0) < 1e-14);

    Matrix b(2, 2);
    b(0, 0) = .3;
    b(0, 1) = .2;
    b(1, 0) = .2;
    b(1, 1) = .3;
    ContingencyTable t(b);
    auto [cov, dec] = covariance_decomposition(t);
    const double phi = 0.2;  // (.09-.04)/sqrt(.5^4)
    auto [dx, dy] = table_margins(t);
    CHECK(cov == doctest::Approx(phi * std::sqrt(dx.variance() * dy.variance())).epsilon(1e-10));
    CHECK(dec == doctest::Approx(cov).epsilon(1e-10));
}

TEST_CASE("zero-order cross identity LP[j,0] = sum_k LP[j,k] LP(k;Y)") {
    std::mt19937_64 gen(18);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t rows = 2 + gen() % 8, cols = 2 + gen() % 8;
        ContingencyTable t(test::random_joint(gen, rows, cols));
        const std::size_t m = std::max(rows, cols);
        auto cm = lp_comoments(t, m);
        auto my = lp_moments(cm.basis_y->dist(), *cm.basis_y, cm.m2());
        for (std::size_t j = 0; j < cm.m1(); ++j) {
            double rhs = 0.0;
            for (std::size_t k = 0; k < cm.m2(); ++k) rhs += cm.entries(j, k) * my.coeffs[k];
            CHECK(cm.zero_col[j] == doctest::Approx(rhs).epsilon(1e-8).scale(1.0));
        }
    }
}

TEST_CASE("Gini correlations: Y = X gives 1 at every order") {
    Rng rng(5);
    PairedSample s;
    for (int i = 0; i < 500; ++i) {
        const double v = rng.normal();
        s.x.push_back(v);
        s.y.push_back(v);
    }
    for (std::size_t j = 1; j <= 3; ++j) {
        auto [gy, gx] = gini_correlations(s, j);
        CHECK(gy == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(gx == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("Gini correlations: bivariate normal rho = 0.5 at odd orders") {
    Rng rng(6);
    PairedSample s;
    const double rho = 0.5;
    for (int i = 0; i < 100000; ++i) {
        const double z1 = rng.normal(), z2 = rng.normal();
        s.x.push_back(z1);
        s.y.push_back(rho * z1 + std::sqrt(1 - rho * rho) * z2);
    }
    auto [g1, g1x] = gini_correlations(s, 1);
    CHECK(std::abs(g1 - 0.5) < 0.02);
    CHECK(std::abs(g1x - 0.5) < 0.02);
    auto [g3, g3x] = gini_correlations(s, 3);
    CHECK(std::abs(g3 - 0.5) < 0.05);
    CHECK(std::abs(g3x - 0.5) < 0.05);
}

TEST_CASE("Gini degenerate denominator is reported") {
    // symmetric two-point Y: E[T_2(Y) Y] = 0 at even orders is not reachable
    // with k = 2 (no T_2); use a symmetric three-pointer where the even
    // moment vanishes
    PairedSample s;
    for (int i = 0; i < 12; ++i) {
        s.x.push_back(i % 3);
        s.y.push_back((i % 3) - 1);  // symmetric around 0
    }
    CHECK_THROWS_AS(gini_correlations(s, 2), DataError);
}

TEST_CASE("bivariate normal comoment matrix: spot check against reference") {
    Rng rng(2024);
    const double rho = 0.5;
    PairedSample s;
    const int n = 200000;
    s.x.resize(n);
    s.y.resize(n);
    for (int i = 0; i < n; ++i) {
        const double z1 = rng.normal(), z2 = rng.normal();
        s.x[i] = z1;
        s.y[i] = rho * z1 + std::sqrt(1 - rho * rho) * z2;
    }
    auto cm = lp_comoments(s, 4);
    CHECK(std::abs(cm.entries(0, 0) - 0.48) < 0.02);
    CHECK(std::abs(cm.entries(1, 1) - 0.20) < 0.02);
    CHECK(std::abs(cm.entries(0, 1)) < 0.02);
    CHECK(std::abs(cm.entries(0, 2) - 0.07) < 0.02);
}

}  // TEST_SUITE
