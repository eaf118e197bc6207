#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "lpstat/comparison_density.hpp"
#include "lpstat/errors.hpp"
#include "lpstat/legendre.hpp"
#include "lpstat/quadrature.hpp"
#include "lpstat/rng.hpp"
#include "test_support.hpp"

using namespace lpstat;

TEST_SUITE("skew_density") {

TEST_CASE("components of data drawn from G are root-n normal") {
    Rng rng(303);
    auto g = Baseline::normal(0.0, 1.0);
    const std::size_t n = 5000;
    int extreme = 0;
    const int seeds = 200;
    double mean_scaled = 0.0;
    for (int s = 0; s < seeds; ++s) {
        Sample data;
        data.values.resize(n);
        for (auto& v : data.values) v = rng.normal();
        auto c = gof_components(data, g, 4);
        for (double cj : c) {
            if (std::abs(cj) >= 3.5 / std::sqrt(static_cast<double>(n))) ++extreme;
            mean_scaled += n * cj * cj;
        }
    }
    // each sqrt(n) c_j is approximately standard normal
    CHECK(static_cast<double>(extreme) / (seeds * 4.0) < 0.01);
    CHECK(std::abs(mean_scaled / (seeds * 4.0) - 1.0) < 0.1);
}

TEST_CASE("null calibration: n times the raw m=4 statistic has mean about 4") {
    Rng rng(304);
    const std::size_t n = 200;
    double acc = 0.0;
    const int seeds = 500;
    auto g = Baseline::normal(0.0, 1.0);
    for (int s = 0; s < seeds; ++s) {
        Sample data;
        data.values.resize(n);
        for (auto& v : data.values) v = rng.normal();
        auto c = gof_components(data, g, 4);
        auto st = gof_statistic(c, {});
        acc += static_cast<double>(n) * st.raw;
    }
    CHECK(std::abs(acc / seeds - 4.0) < 0.4);
}

TEST_CASE("exact match of a discrete law with itself gives zero components") {
    auto d = DiscreteDist::from_masses({0, 1, 2, 3}, {.1, .2, .3, .4});
    auto g = Baseline::discrete(d);
    auto c = gof_components(d, g, 3);
    for (double v : c) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("out-of-support data is an error, not a clamp") {
    auto g = Baseline::exponential(2.0);
    CHECK_THROWS_AS(gof_components(Sample{{1.0, -0.5, 2.0}}, g, 3), DataError);
}

TEST_CASE("AIC selection") {
    SUBCASE("all zero coefficients select nothing") {
        CHECK(select_aic(std::vector<double>{0, 0, 0, 0}, 100).empty());
    }
    SUBCASE("single dominant component at Buffalo scale") {
        std::vector<double> c{0.02, -0.03, 0.01, 0.02, 0.04, 0.337, 0.03, -0.02};
        auto sel = select_aic(c, 63);
        REQUIRE(sel.size() == 1);
        CHECK(sel[0] == 5);  // the 0.337 component, order 6
    }
    SUBCASE("penalty dominates two marginal components") {
        const double c = std::sqrt(1.9 / 100.0);
        CHECK(select_aic(std::vector<double>{c, c}, 100).empty());
    }
}

TEST_CASE("Tripadvisor-style selection picks orders 2, 3, 4") {
    // structural surrogate: a Poisson-baseline model with the printed
    // coefficient pattern, rescored from its own skew mass function
    auto g = Baseline::poisson(3.82);
    const DiscreteDist& gd = g.dist(30.0);
    auto scores = build_scores(gd, 5);
    std::vector<double> target{0.0, -0.55, -0.40, 0.23, 0.0};
    std::vector<double> mass(gd.size());
    for (std::size_t i = 0; i < gd.size(); ++i) {
        double dval = 1.0;
        for (std::size_t j = 1; j <= 5; ++j) dval += target[j - 1] * scores.at(j, i);
        mass[i] = gd.masses()[i] * std::max(0.0, dval);
    }
    auto data = DiscreteDist::from_masses(gd.atoms(), mass);
    auto c = gof_components(data, g, 5);
    auto sel = select_aic(c, 1000.0);
    REQUIRE(sel.size() == 3);
    CHECK(sel[0] == 1);
    CHECK(sel[1] == 2);
    CHECK(sel[2] == 3);
}

TEST_CASE("goodness-of-fit equals the chi-square divergence for discrete laws") {
    std::mt19937_64 gen(42);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t k = 2 + gen() % 14;
        auto p0 = test::random_masses(gen, k);
        auto pt = test::random_masses(gen, k);
        std::vector<double> atoms(k);
        for (std::size_t i = 0; i < k; ++i) atoms[i] = static_cast<double>(i);
        auto base = DiscreteDist::from_masses(atoms, p0);
        auto data = DiscreteDist::from_masses(atoms, pt);
        auto g = Baseline::discrete(base);

        auto c = gof_components(data, g, k - 1);  // full basis
        auto st = gof_statistic(c, {});

        double chidiv = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double r = pt[i] / p0[i] - 1.0;
            chidiv += p0[i] * r * r;
        }
        CHECK(std::abs(st.raw - chidiv) < 1e-10);
    }
}

TEST_CASE("skew density with empty selection reproduces the baseline") {
    auto g = Baseline::normal(1.0, 2.0);
    auto cd = fit_l2(g, {0.0, 0.0, 0.0}, {}, std::nullopt);
    for (double x : {-3.0, 0.0, 1.0, 4.0})
        CHECK(lp_skew_density(cd, x) == doctest::Approx(g.pdf(x)).epsilon(1e-12));
}

namespace {

// independent oracle: adaptive Simpson handles the clipping kinks
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate_oracle(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

TEST_CASE("clipped L2 skew density integrates to one (quadrature oracle)") {
    auto g = Baseline::normal(0.0, 1.0);
    auto cd = fit_l2(g, {0.0, 0.5}, {1}, std::nullopt);  // d = 1 + 0.5 Leg_2
    auto f1 = [&](double x) { return lp_skew_density(cd, x); };
    CHECK(std::abs(integrate_oracle(f1, -8.0, 8.0, 1e-10) - 1.0) < 1e-6);

    // a selection that forces clipping still integrates to one
    auto cd2 = fit_l2(g, {1.4, 0.9}, {0, 1}, std::nullopt);
    CHECK(cd2.clipped_mass() > 0.0);
    auto f2 = [&](double x) { return lp_skew_density(cd2, x); };
    CHECK(std::abs(integrate_oracle(f2, -8.0, 8.0, 1e-10) - 1.0) < 1e-6);
}

TEST_CASE("discrete skew density sums to one after renormalization") {
    auto g = Baseline::poisson(2.0);
    auto cd = fit_l2(g, {0.3, -0.6, 0.2}, {0, 1, 2}, std::nullopt);
    const DiscreteDist& gd = g.dist();
    double total = 0.0;
    for (double x : gd.atoms()) total += lp_skew_density(cd, x);
    CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("exponential fit: zero target gives the flat model") {
    auto g = Baseline::normal(0.0, 1.0);
    auto cd = fit_exponential(g, {0.0, 0.0}, {0, 1}, std::nullopt);
    CHECK(std::abs(cd.coeffs()[0]) < 1e-12);
    CHECK(std::abs(cd.coeffs()[1]) < 1e-12);
    CHECK(std::abs(cd.log_normalizer()) < 1e-12);
}

TEST_CASE("exponential fit: small target linearizes and round-trips") {
    auto g = Baseline::normal(0.0, 1.0);
    const double eps = 0.01;
    auto cd = fit_exponential(g, {eps}, {0}, std::nullopt);
    CHECK(std::abs(cd.coeffs()[0] - eps) < 1e-3);

    // independent dense-grid rescoring of the fitted model
    auto rule = uniform_composite_gauss(1000, 4);
    for (std::size_t j = 1; j <= 1; ++j) {
        double moment = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            moment += rule.weights[i] * cd.density(rule.nodes[i]) *
                      legendre(static_cast<unsigned>(j), rule.nodes[i]);
        CHECK(std::abs(moment - eps) < 1e-6);
    }
}

TEST_CASE("exponential fit round-trips multi-component targets") {
    auto g = Baseline::normal(0.0, 1.0);
    std::vector<double> target{0.12, -0.2, 0.05, 0.18};
    auto cd = fit_exponential(g, target, {0, 1, 2, 3}, std::nullopt);
    auto rule = uniform_composite_gauss(1000, 4);
    for (std::size_t j = 1; j <= 4; ++j) {
        double moment = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            moment += rule.weights[i] * cd.density(rule.nodes[i]) *
                      legendre(static_cast<unsigned>(j), rule.nodes[i]);
        CHECK(std::abs(moment - target[j - 1]) < 1e-6);
    }
    // the exponential density needs no clipping and integrates to one
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        total += rule.weights[i] * cd.density(rule.nodes[i]);
    CHECK(std::abs(total - 1.0) < 1e-8);
}

TEST_CASE("L2 and exponential forms agree to first order for small effects") {
    auto g = Baseline::normal(0.0, 1.0);
    std::vector<double> coeffs{0.04, -0.03, 0.02};
    std::vector<std::size_t> sel{0, 1, 2};
    auto l2 = fit_l2(g, coeffs, sel, std::nullopt);
    auto ex = fit_exponential(g, coeffs, sel, std::nullopt);
    double sup = 0.0;
    for (int i = 1; i < 200; ++i) {
        const double u = i / 200.0;
        sup = std::max(sup, std::abs(l2.density(u) - ex.density(u)));
    }
    CHECK(sup < 0.01);
}

TEST_CASE("statistic is invariant under joint monotone transformation (discrete)") {
    std::mt19937_64 gen(9);
    auto p0 = test::random_masses(gen, 8);
    auto pt = test::random_masses(gen, 8);
    std::vector<double> atoms{0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<double> warped(atoms);
    for (auto& a : warped) a = std::exp(0.7 * a) - 2.0;

    auto c1 = gof_components(DiscreteDist::from_masses(atoms, pt),
                             Baseline::discrete(DiscreteDist::from_masses(atoms, p0)), 5);
    auto c2 = gof_components(DiscreteDist::from_masses(warped, pt),
                             Baseline::discrete(DiscreteDist::from_masses(warped, p0)), 5);
    for (std::size_t j = 0; j < c1.size(); ++j) CHECK(c1[j] == doctest::Approx(c2[j]).epsilon(1e-12));
}

TEST_CASE("baseline fitting follows method of moments") {
    Sample s{{1, 2, 3, 4, 10}};
    auto nb = Baseline::fit(Baseline::Kind::Normal, s);
    CHECK(nb.params()[0] == doctest::Approx(4.0));
    auto eb = Baseline::fit(Baseline::Kind::Exponential, s);
    CHECK(eb.params()[0] == doctest::Approx(4.0));
    auto pb = Baseline::fit(Baseline::Kind::Poisson, s);
    CHECK(pb.params()[0] == doctest::Approx(4.0));
    auto gb = Baseline::fit(Baseline::Kind::Gamma, s);
    // shape = mean^2/var, rate = mean/var with the n-1 variance
    const double var = (9 + 4 + 1 + 0 + 36) / 4.0;
    CHECK(gb.params()[0] == doctest::Approx(16.0 / var));
    CHECK(gb.params()[1] == doctest::Approx(4.0 / var));
}

}  // TEST_SUITE
