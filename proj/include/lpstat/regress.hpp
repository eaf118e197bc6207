#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lpstat/comoments.hpp"
#include "lpstat/comparison_density.hpp"
#include "lpstat/selection.hpp"

namespace lpstat {

/// Copula-based nonparametric regression model: conditional mean from the
/// zero-order comoments, conditional density/quantiles from the copula
/// slices, with the Y margin either discrete (exact cell masses) or smoothed
/// by an LP skew estimate against a fitted normal baseline.
class ConditionalModel {
public:
    const LPComomentMatrix& comoments() const { return cm_; }
    const std::vector<std::size_t>& mean_selection() const { return mean_sel_; }
    double mean_y() const { return cm_.mean_y; }
    bool smooth_y_margin() const { return marginal_y_.has_value(); }
    const ComparisonDensity* marginal_y() const {
        return marginal_y_ ? &*marginal_y_ : nullptr;
    }

    friend ConditionalModel fit_conditional(const PairedSample&, std::size_t,
                                            const SelectionOptions&, bool);
    friend ConditionalModel fit_conditional(const ContingencyTable&, std::size_t);

    LPComomentMatrix cm_;
    std::vector<std::size_t> mean_sel_;
    std::optional<ComparisonDensity> marginal_y_;
};

/// Fit from paired observations. Mean coefficients LP(j,0) are selected by
/// `mean_rule` applied to sqrt(n) LP(j,0) / sd(Y T_j(X)). With
/// `smooth_y_margin` the Y marginal density is an LP skew estimate against a
/// moment-fitted normal baseline (used by the continuous conditional
/// density); otherwise the empirical masses are used directly.
ConditionalModel fit_conditional(const PairedSample& s, std::size_t m,
                                 const SelectionOptions& mean_rule = {},
                                 bool smooth_y_margin = false);

/// Fit from a joint table; all coefficients kept (exact finite model).
ConditionalModel fit_conditional(const ContingencyTable& t, std::size_t m);

/// E[Y | X = x] = E[Y] + sum_selected LP(j,0) T_j(x;X).
double conditional_mean(const ConditionalModel& m, double x);

/// Conditional comparison density d(t; Y | X = Q(u)) clipped at zero, as
/// cell values over the Y margin together with the normalizer.
struct ConditionalSlice {
    std::vector<double> cell_density;  // clipped, unnormalized
    double normalizer = 0.0;           // mass-weighted integral of the above
};
ConditionalSlice conditional_slice(const ConditionalModel& m, double u);

/// Conditional mass function over the atoms of Y (discrete margins).
std::vector<double> conditional_pmf(const ConditionalModel& m, double u);

/// Conditional density at y for continuous Y (smooth margin required):
/// fhat(y) d(F(y); Y | X = Q(u)), renormalized.
double conditional_density(const ConditionalModel& m, double u, double y);

enum class QuantilePath { Invert, Sample };

struct QuantileOptions {
    QuantilePath path = QuantilePath::Invert;
    std::uint64_t seed = 1;
    std::size_t draws = 100000;  // accept-reject sample size
};

/// Conditional quantile Q(v; Y | X = Q(u)): deterministic inversion of the
/// slice CDF by default, seeded accept-reject sampling as the alternative.
double conditional_quantile(const ConditionalModel& m, double u, double v,
                            const QuantileOptions& opt = {});

}  // namespace lpstat
