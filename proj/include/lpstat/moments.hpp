#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lpstat/discrete_dist.hpp"
#include "lpstat/score_basis.hpp"

namespace lpstat {

/// LP moments LP(j;X) = E[X T_j(X)] together with the first two ordinary
/// moments. With the full basis (m = atoms - 1) the coefficients satisfy
/// sum_j LP(j)^2 = Var(X).
struct LPMomentVector {
    std::vector<double> coeffs;  // LP(j), j = 1..m
    double mean = 0.0;
    double var = 0.0;
    std::optional<double> n;  // sample size when empirical
};

LPMomentVector lp_moments(const DiscreteDist& d, const ScoreBasis& b, std::size_t m);

/// Convenience: empirical moments of a sample at order m (clipped to k-1).
LPMomentVector lp_moments(const Sample& s, std::size_t m);

/// LP(1) of a tie-free sample as an explicit L-statistic:
/// (2 sqrt(3) / (n sqrt(n^2-1))) sum X_(i) (i - (n+1)/2).
/// Errors when ties are present.
double lp1_order_stat(const Sample& s);

/// Both sides of the variance decomposition (Var X, sum_j LP(j)^2) under the
/// full basis.
std::pair<double, double> variance_decomposition(const DiscreteDist& d, const ScoreBasis& b);

/// Correlation-type normality statistic LP(1;X)/sd(X), approximately
/// sqrt(3/pi) = 0.977 for normal data. short_tailed flags statistic^2 > 0.95.
struct DAgostinoResult {
    double statistic = 0.0;
    bool short_tailed = false;
};
DAgostinoResult dagostino(const Sample& s);

/// Population LP moments of a continuous law from its quantile function, by
/// 256-node endpoint-graded Gauss-Legendre quadrature of int Q(u) Leg_j(u) du.
std::vector<double> population_lp_moments(const std::function<double(double)>& quantile_fn,
                                          std::size_t m);

/// Population LP moments of standard laws (reference-table reproduction).
/// Discrete laws are truncated at cumulative mass 1 - 1e-12 and summed
/// exactly; continuous laws use the quadrature path with analytic quantiles.
std::vector<double> population_lp_moments_named(const std::string& name, std::size_t m);

}  // namespace lpstat
