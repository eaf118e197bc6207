#include "lpstat/moments.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/geometric.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <cmath>

#include "lpstat/errors.hpp"
#include "lpstat/legendre.hpp"
#include "lpstat/matrix.hpp"
#include "lpstat/quadrature.hpp"

namespace lpstat {

LPMomentVector lp_moments(const DiscreteDist& d, const ScoreBasis& b, std::size_t m) {
    if (&b.dist() != &d && b.dist().atoms() != d.atoms())
        throw DataError("score basis was not built on this distribution");
    if (m > b.m()) m = b.m();
    LPMomentVector out;
    out.mean = d.mean();
    out.var = d.variance();
    out.coeffs.resize(m);
    const std::size_t k = d.size();
    std::vector<double> terms(k);
    for (std::size_t j = 1; j <= m; ++j) {
        for (std::size_t i = 0; i < k; ++i)
            terms[i] = d.masses()[i] * d.atoms()[i] * b.at(j, i);
        out.coeffs[j - 1] = pairwise_sum(terms);
    }
    return out;
}

LPMomentVector lp_moments(const Sample& s, std::size_t m) {
    auto d = std::make_shared<const DiscreteDist>(empirical_dist(s));
    auto b = build_scores(d, m);
    auto out = lp_moments(*d, b, m);
    out.n = static_cast<double>(s.n());
    return out;
}

double lp1_order_stat(const Sample& s) {
    const std::size_t n = s.n();
    if (n < 2) throw DataError("need at least two observations");
    std::vector<double> sorted = s.values;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < n; ++i)
        if (sorted[i] == sorted[i - 1])
            throw DataError("ties present; use lp_moments on the empirical distribution");
    const double nn = static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += sorted[i] * (static_cast<double>(i + 1) - 0.5 * (nn + 1.0));
    return 2.0 * std::sqrt(3.0) / (nn * std::sqrt(nn * nn - 1.0)) * acc;
}

std::pair<double, double> variance_decomposition(const DiscreteDist& d, const ScoreBasis& b) {
    auto mv = lp_moments(d, b, b.m());
    double ss = 0.0;
    for (double c : mv.coeffs) ss += c * c;
    return {mv.var, ss};
}

DAgostinoResult dagostino(const Sample& s) {
    if (s.n() < 3) throw DataError("need at least three observations");
    auto mv = lp_moments(s, 1);
    if (mv.var <= 0.0) throw DataError("constant sample");
    DAgostinoResult r;
    r.statistic = mv.coeffs[0] / std::sqrt(mv.var);
    r.short_tailed = r.statistic * r.statistic > 0.95;
    return r;
}

std::vector<double> population_lp_moments(const std::function<double(double)>& quantile_fn,
                                          std::size_t m) {
    static const QuadratureRule rule = graded_gauss_legendre(32, 8);  // 256 nodes
    std::vector<double> q(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) q[i] = quantile_fn(rule.nodes[i]);
    std::vector<double> out(m);
    for (std::size_t j = 1; j <= m; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * q[i] * legendre(static_cast<unsigned>(j), rule.nodes[i]);
        out[j - 1] = s;
    }
    return out;
}

namespace {

template <typename Dist>
std::vector<double> discrete_population_moments(const Dist& dist, double first_atom,
                                                std::size_t m) {
    std::vector<double> atoms, masses;
    double x = first_atom;
    double cum = 0.0;
    while (cum < 1.0 - 1e-12) {
        const double p = boost::math::pdf(dist, x);
        atoms.push_back(x);
        masses.push_back(p);
        cum += p;
        x += 1.0;
    }
    auto d = DiscreteDist::from_masses(std::move(atoms), std::move(masses));
    auto b = build_scores(d, m);
    return lp_moments(d, b, m).coeffs;
}

}  // namespace

std::vector<double> population_lp_moments_named(const std::string& name, std::size_t m) {
    if (name == "uniform")
        return population_lp_moments([](double u) { return u; }, m);
    if (name == "normal") {
        boost::math::normal_distribution<double> nd(0.0, 1.0);
        return population_lp_moments([&](double u) { return boost::math::quantile(nd, u); }, m);
    }
    if (name == "t2")
        return population_lp_moments(
            [](double u) { return (2.0 * u - 1.0) / std::sqrt(2.0 * u * (1.0 - u)); }, m);
    if (name == "chisq4") {
        boost::math::chi_squared_distribution<double> cd(4.0);
        return population_lp_moments([&](double u) { return boost::math::quantile(cd, u); }, m);
    }
    if (name == "poisson2")
        return discrete_population_moments(boost::math::poisson_distribution<double>(2.0), 0.0, m);
    if (name == "geometric02")
        // failures-before-success parameterization; LP moments are shift
        // invariant so the support convention does not matter
        return discrete_population_moments(boost::math::geometric_distribution<double>(0.2), 0.0,
                                           m);
    throw DataError("unknown reference distribution: " + name);
}

}  // namespace lpstat
