#include <doctest.h>

#include <cmath>
#include <random>

#include "lpstat/discrete_dist.hpp"
#include "lpstat/errors.hpp"
#include "lpstat/legendre.hpp"
#include "lpstat/rng.hpp"
#include "lpstat/score_basis.hpp"
#include "test_support.hpp"

using namespace lpstat;

namespace {

double weighted_dot(const DiscreteDist& d, const ScoreBasis& b, std::size_t j, std::size_t l) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        acc += d.masses()[i] * b.at(j, i) * b.at(l, i);
    return acc;
}

}  // namespace

TEST_SUITE("lp_basis") {

TEST_CASE("Legendre closed forms") {
    CHECK(legendre(1, 0.5) == doctest::Approx(0.0));
    CHECK(legendre(1, 1.0) == doctest::Approx(std::sqrt(12.0) * 0.5));
    CHECK(legendre(2, 0.0) == doctest::Approx(std::sqrt(5.0)));
    CHECK(legendre(3, 1.0) == doctest::Approx(std::sqrt(7.0)));
    CHECK(legendre(4, 1.0) == doctest::Approx(3.0 * (70 - 140 + 90 - 20 + 1)));
    CHECK(legendre(4, 0.0) == doctest::Approx(3.0));
}

TEST_CASE("coefficient table agrees with the recurrence and is orthonormal") {
    LegendreBasis basis(10);
    CHECK(basis.orthonormality_defect() < 1e-12);
    for (unsigned j = 0; j <= 10; ++j)
        for (double u : {0.0, 0.13, 0.5, 0.77, 1.0})
            CHECK(basis.eval(j, u) == doctest::Approx(legendre(j, u)).epsilon(1e-10));
}

TEST_CASE("T_1 matches the mid-distribution formula exactly") {
    std::mt19937_64 gen(3);
    for (int rep = 0; rep < 50; ++rep) {
        auto d = test::random_dist(gen, 2 + gen() % 20);
        auto b = build_scores(d, 1);
        const double sd = std::sqrt(midvar(d));
        for (std::size_t i = 0; i < d.size(); ++i)
            CHECK(b.at(1, i) ==
                  doctest::Approx((d.mid()[i] - 0.5) / sd).epsilon(1e-12));
    }
}

TEST_CASE("orthonormality on randomized distributions") {
    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t k = 2 + gen() % 49;
        auto d = test::random_dist(gen, k);
        auto b = build_scores(d, std::min<std::size_t>(8, k - 1));
        for (std::size_t j = 1; j <= b.m(); ++j) {
            double zero = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) zero += d.masses()[i] * b.at(j, i);
            CHECK(std::abs(zero) < 1e-10);
            for (std::size_t l = 1; l <= b.m(); ++l) {
                const double target = j == l ? 1.0 : 0.0;
                CHECK(std::abs(weighted_dot(d, b, j, l) - target) < 1e-10);
            }
        }
    }
}

TEST_CASE("exact rational Gram-Schmidt oracle: Poisson(2) frequency table") {
    // 250 draws from Poisson(lambda = 2)
    Rng rng(424242);
    std::vector<double> draws(250);
    for (auto& v : draws) {
        // inverse transform on the cdf
        double u = rng.uniform();
        double cum = std::exp(-2.0), p = cum;
        int x = 0;
        while (u > cum && x < 100) {
            ++x;
            p *= 2.0 / x;
            cum += p;
        }
        v = x;
    }
    auto d = empirical_dist(Sample{draws});
    auto b = build_scores(d, 4);

    // frequencies are integers over 250: exact rational masses
    std::vector<test::BigRational> masses(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto count = static_cast<long long>(std::llround(d.masses()[i] * 250));
        masses[i] = test::BigRational(count, 250);
    }
    auto oracle = test::rational_gram_schmidt(masses, b.m());
    for (std::size_t j = 0; j < b.m(); ++j)
        for (std::size_t i = 0; i < d.size(); ++i)
            CHECK(b.table()(j, i) == doctest::Approx(oracle(j, i)).epsilon(1e-9));

    // piecewise-constant step shapes: T_1 nondecreasing in the atom order
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(b.at(1, i) > b.at(1, i - 1));
}

TEST_CASE("2x2 margin scores take the closed form") {
    const double p1 = 0.3, p2 = 0.7;
    auto d = DiscreteDist::from_masses({0, 1}, {p1, p2});
    auto b = build_scores(d, 4);
    CHECK(b.m() == 1);  // clipped to k-1
    CHECK(b.clipped());
    CHECK(b.at(1, 0) == doctest::Approx(-std::sqrt(p2 / p1)).epsilon(1e-12));
    CHECK(b.at(1, 1) == doctest::Approx(std::sqrt(p1 / p2)).epsilon(1e-12));
}

TEST_CASE("discrete uniform scores match shifted Legendre at mid-ranks") {
    std::vector<double> atoms(250), masses(250, 1.0);
    for (int i = 0; i < 250; ++i) atoms[i] = i;
    auto d = DiscreteDist::from_masses(atoms, masses);
    auto b = build_scores(d, 4);
    for (std::size_t j = 1; j <= 4; ++j) {
        double sxy = 0.0, sxx = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double leg = legendre(static_cast<unsigned>(j), d.mid()[i]);
            sxy += d.masses()[i] * b.at(j, i) * leg;
            sxx += d.masses()[i] * b.at(j, i) * b.at(j, i);
            syy += d.masses()[i] * leg * leg;
        }
        CHECK(sxy / std::sqrt(sxx * syy) > 0.999);
    }
}

TEST_CASE("continuous limit: sup-norm agreement with Legendre at n = 5000") {
    Rng rng(99);
    std::vector<double> v(5000);
    for (auto& x : v) x = rng.uniform();
    auto d = empirical_dist(Sample{v});
    REQUIRE(d.size() == 5000);  // distinct with probability 1
    auto b = build_scores(d, 4);
    for (std::size_t j = 1; j <= 4; ++j) {
        double sup = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i)
            sup = std::max(sup,
                           std::abs(b.at(j, i) - legendre(static_cast<unsigned>(j), d.mid()[i])));
        CHECK(sup < 0.05);
    }
}

TEST_CASE("basis is invariant under strictly monotone relabeling") {
    std::mt19937_64 gen(17);
    auto d = test::random_dist(gen, 12);
    auto b1 = build_scores(d, 5);
    std::vector<double> relabeled(d.atoms());
    for (auto& a : relabeled) a = std::exp(a);
    auto d2 = DiscreteDist::from_masses(relabeled, d.masses());
    auto b2 = build_scores(d2, 5);
    REQUIRE(b1.m() == b2.m());
    for (std::size_t j = 0; j < b1.m(); ++j)
        for (std::size_t i = 0; i < d.size(); ++i)
            CHECK(b1.table()(j, i) == b2.table()(j, i));
}

TEST_CASE("single-atom distribution is rejected") {
    auto d = DiscreteDist::from_masses({1.0}, {1.0});
    CHECK_THROWS_AS(build_scores(d, 2), DataError);
}

TEST_CASE("Bernoulli unit score is a two-level step") {
    auto d = DiscreteDist::from_masses({0, 1}, {0.5, 0.5});
    auto b = build_scores(d, 1);
    CHECK(unit_score(b, 1, 0.2) == doctest::Approx(-1.0));
    CHECK(unit_score(b, 1, 0.8) == doctest::Approx(1.0));
    // jump point takes the right cell
    CHECK(unit_score(b, 1, 0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(unit_score(b, 2, 0.5), DataError);
}

TEST_CASE("unit scores integrate to zero over (0,1)") {
    std::mt19937_64 gen(31);
    for (int rep = 0; rep < 20; ++rep) {
        auto d = test::random_dist(gen, 3 + gen() % 10);
        auto b = build_scores(d, 2);
        for (std::size_t j = 1; j <= b.m(); ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) acc += d.masses()[i] * b.at(j, i);
            CHECK(std::abs(acc) < 1e-10);
        }
    }
}

}  // TEST_SUITE
