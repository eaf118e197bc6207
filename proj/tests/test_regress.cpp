#include <doctest.h>

#include <cmath>
#include <random>

#include "lpstat/errors.hpp"
#include "lpstat/moments.hpp"
#include "lpstat/regress.hpp"
#include "lpstat/rng.hpp"
#include "test_support.hpp"

using namespace lpstat;

TEST_SUITE("lp_regress") {

TEST_CASE("exact finite joint: conditional masses equal the table rows") {
    std::mt19937_64 gen(91);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t rows = 2 + gen() % 6, cols = 2 + gen() % 6;
        ContingencyTable t(test::random_joint(gen, rows, cols));
        auto model = fit_conditional(t, std::max(rows, cols));
        auto [dx, dy] = table_margins(t);
        for (std::size_t i = 0; i < rows; ++i) {
            auto pmf = conditional_pmf(model, dx.mid()[i]);
            double rowsum = 0.0;
            for (std::size_t j = 0; j < cols; ++j) rowsum += t.probs()(i, j);
            for (std::size_t j = 0; j < cols; ++j)
                CHECK(std::abs(pmf[j] - t.probs()(i, j) / rowsum) < 1e-9);
        }
    }
}

TEST_CASE("independence: constant mean and marginal quantiles") {
    std::mt19937_64 gen(92);
    auto rm = test::random_masses(gen, 4);
    auto cm = test::random_masses(gen, 6);
    Matrix p(4, 6);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 6; ++j) p(i, j) = rm[i] * cm[j];
    ContingencyTable t(p);
    auto model = fit_conditional(t, 3);
    auto [dx, dy] = table_margins(t);
    for (double u : {0.1, 0.5, 0.9}) {
        CHECK(std::abs(conditional_mean(model, quantile(dx, u)) - model.mean_y()) < 1e-10);
        for (double v : {0.2, 0.5, 0.8})
            CHECK(conditional_quantile(model, u, v) == quantile(dy, v));
    }
}

TEST_CASE("law of total expectation") {
    std::mt19937_64 gen(93);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t rows = 2 + gen() % 7, cols = 2 + gen() % 7;
        ContingencyTable t(test::random_joint(gen, rows, cols));
        auto model = fit_conditional(t, std::max(rows, cols));
        auto [dx, dy] = table_margins(t);
        double acc = 0.0;
        for (std::size_t i = 0; i < rows; ++i)
            acc += dx.masses()[i] * conditional_mean(model, dx.atoms()[i]);
        CHECK(std::abs(acc - model.mean_y()) < 1e-9);
    }
}

TEST_CASE("orthogonality of residuals against the selected scores") {
    std::mt19937_64 gen(94);
    ContingencyTable t(test::random_joint(gen, 5, 6));
    auto model = fit_conditional(t, 4);
    auto [dx, dy] = table_margins(t);
    const auto& cm = model.comoments();
    for (std::size_t j : model.mean_selection()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t l = 0; l < 6; ++l)
                acc += t.probs()(i, l) *
                       (dy.atoms()[l] - conditional_mean(model, dx.atoms()[i])) *
                       cm.basis_x->at(j + 1, i);
        CHECK(std::abs(acc) < 1e-9);
    }
}

TEST_CASE("bivariate normal: zero-order comoments scale with rho") {
    Rng rng(95);
    const double rho = 0.5;
    PairedSample s;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double z1 = rng.normal(), z2 = rng.normal();
        s.x.push_back(z1);
        s.y.push_back(rho * z1 + std::sqrt(1 - rho * rho) * z2);
    }
    auto cm = lp_comoments(s, 4);
    auto my = lp_moments(Sample{s.y}, 4);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(std::abs(cm.zero_col[j] - rho * my.coeffs[j]) < 0.03);
}

TEST_CASE("quantiles are nondecreasing in v within a slice") {
    Rng rng(96);
    PairedSample s;
    for (int i = 0; i < 500; ++i) {
        const double x = rng.uniform(-1, 1);
        s.x.push_back(x);
        s.y.push_back(x * x + 0.2 * rng.normal());
    }
    auto model = fit_conditional(s, 4);
    for (double u : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        double prev = -1e300;
        for (double v : {0.1, 0.25, 0.5, 0.75, 0.9}) {
            const double q = conditional_quantile(model, u, v);
            CHECK(q >= prev);
            prev = q;
        }
    }
}

TEST_CASE("accept-reject sampling agrees with deterministic inversion") {
    Rng rng(97);
    PairedSample s;
    for (int i = 0; i < 400; ++i) {
        const double x = rng.normal();
        s.x.push_back(x);
        s.y.push_back(0.8 * x + 0.5 * rng.normal());
    }
    auto model = fit_conditional(s, 4);
    const double u = 0.3;

    // KS distance between the accept-reject draws and the inversion CDF
    auto slice = conditional_slice(model, u);
    const auto& dy = model.comoments().basis_y->dist();
    auto cdf = [&](double t) {
        double cum = 0.0;
        for (std::size_t l = 0; l < dy.size(); ++l) {
            const double left = dy.cumulative()[l] - dy.masses()[l];
            if (t <= left) break;
            const double frac = std::min(1.0, (t - left) / dy.masses()[l]);
            cum += dy.masses()[l] * slice.cell_density[l] * frac;
        }
        return cum / slice.normalizer;
    };

    QuantileOptions qo;
    qo.path = QuantilePath::Sample;
    qo.seed = 5;
    qo.draws = 100000;
    // draw once through the sampling path at many v's and compare to the
    // deterministic path in the v domain
    for (double v : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double qs = conditional_quantile(model, u, v, qo);
        const double qi = conditional_quantile(model, u, v);
        // both are atoms of Y; compare their slice-CDF positions
        CHECK(std::abs(cdf(midcdf(dy, qs)) - cdf(midcdf(dy, qi))) < 2.0 / 1024.0 + 0.01);
    }
}

TEST_CASE("smooth-margin conditional density integrates to one") {
    Rng rng(98);
    PairedSample s;
    for (int i = 0; i < 600; ++i) {
        const double x = rng.normal();
        s.x.push_back(x);
        s.y.push_back(x + 0.7 * rng.normal());
    }
    auto model = fit_conditional(s, 4, {}, /*smooth_y_margin=*/true);
    REQUIRE(model.smooth_y_margin());
    const double u = 0.4;
    // trapezoid over a wide y range
    const double lo = -8.0, hi = 8.0;
    const int grid = 4000;
    double total = 0.0, prev = conditional_density(model, u, lo);
    for (int g = 1; g <= grid; ++g) {
        const double y = lo + (hi - lo) * g / grid;
        const double cur = conditional_density(model, u, y);
        total += 0.5 * (prev + cur) * (hi - lo) / grid;
        prev = cur;
    }
    CHECK(std::abs(total - 1.0) < 0.02);
}

TEST_CASE("conditional density rows equal slice times margin (discrete)") {
    std::mt19937_64 gen(99);
    ContingencyTable t(test::random_joint(gen, 4, 5));
    auto model = fit_conditional(t, 3);
    auto [dx, dy] = table_margins(t);
    for (std::size_t i = 0; i < 4; ++i) {
        auto slice = conditional_slice(model, dx.mid()[i]);
        auto pmf = conditional_pmf(model, dx.mid()[i]);
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(std::abs(pmf[j] - dy.masses()[j] * slice.cell_density[j] / slice.normalizer) <
                  1e-12);
    }
}

TEST_CASE("median of a symmetric slice sits at the symmetry point") {
    // independence makes every slice flat, so the conditional median is the
    // marginal median
    Matrix p(3, 5);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 5; ++j) p(i, j) = (1.0 / 3.0) * 0.2;
    ContingencyTable t(p);
    auto model = fit_conditional(t, 2);
    auto [dx, dy] = table_margins(t);
    CHECK(conditional_quantile(model, 0.5, 0.5) == quantile(dy, 0.5));
}

TEST_CASE("quantile level bounds are enforced") {
    std::mt19937_64 gen(100);
    ContingencyTable t(test::random_joint(gen, 3, 3));
    auto model = fit_conditional(t, 2);
    CHECK_THROWS_AS(conditional_quantile(model, 0.5, 0.0), DataError);
    CHECK_THROWS_AS(conditional_quantile(model, 0.5, 1.0), DataError);
}

}  // TEST_SUITE
