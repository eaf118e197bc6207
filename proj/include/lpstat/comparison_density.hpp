#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lpstat/baseline.hpp"
#include "lpstat/score_basis.hpp"
#include "lpstat/selection.hpp"

namespace lpstat {

enum class DensityForm { L2, Exponential };

/// Comparison density d(u) of the data law against a baseline G, either in
/// truncated L2 form 1 + sum_j c_j S_j(u;G) or in exponential form
/// exp(sum_j theta_j S_j(u;G) - K). For continuous G the unit scores are the
/// shifted Legendre polynomials; for discrete G they are the Gram-Schmidt
/// scores of G's own distribution.
class ComparisonDensity {
public:
    ComparisonDensity(Baseline baseline, DensityForm form, std::vector<double> coeffs,
                      std::vector<std::size_t> selected, std::optional<double> n);

    const Baseline& baseline() const { return baseline_; }
    DensityForm form() const { return form_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const std::vector<std::size_t>& selected() const { return selected_; }
    std::optional<double> n() const { return n_; }
    double log_normalizer() const { return log_normalizer_; }
    void set_log_normalizer(double k) { log_normalizer_ = k; }

    /// Unit score S_j(u;G), j >= 1.
    double score(std::size_t j, double u) const;

    /// d(u) without clipping (L2 form may be negative).
    double density(double u) const;

    /// max(0, d(u)) / Z where Z renormalizes the clipped density to mass 1.
    double density_clipped(double u) const;

    /// Renormalizer Z = int max(0,d) du and the clipped-away negative mass.
    double clip_normalizer() const { return clip_normalizer_; }
    double clipped_mass() const { return clipped_mass_; }

private:
    void compute_normalizer();

    Baseline baseline_;
    DensityForm form_;
    std::vector<double> coeffs_;  // L2: c_j as a dense vector over j=1..m; exp: theta
    std::vector<std::size_t> selected_;
    std::optional<double> n_;
    double log_normalizer_ = 0.0;
    double clip_normalizer_ = 1.0;
    double clipped_mass_ = 0.0;
    std::shared_ptr<const ScoreBasis> g_scores_;  // discrete baselines only
};

/// Goodness-of-fit components LP[j;G,F] = E_F[T_j(X;G)], j = 1..m.
/// Errors when an observation falls outside the support of G.
std::vector<double> gof_components(const Sample& data, const Baseline& g, std::size_t m);

/// Same, for a law given directly as a distribution on the atoms of a
/// discrete baseline.
std::vector<double> gof_components(const DiscreteDist& data, const Baseline& g, std::size_t m);

struct GofStatistic {
    double raw = 0.0;    // sum of all m squared components
    double smooth = 0.0; // sum over the selected components
    std::size_t df_raw = 0;
    std::size_t df_smooth = 0;
};
GofStatistic gof_statistic(const std::vector<double>& coeffs,
                           const std::vector<std::size_t>& selected);

/// L2-form estimate with the given selection.
ComparisonDensity fit_l2(const Baseline& g, const std::vector<double>& coeffs,
                         const std::vector<std::size_t>& selected, std::optional<double> n);

/// Maximum-entropy estimate: theta such that the model components match the
/// selected target coefficients within the solver tolerance.
ComparisonDensity fit_exponential(const Baseline& g, const std::vector<double>& target_coeffs,
                                  const std::vector<std::size_t>& selected,
                                  std::optional<double> n);

/// LP skew density g(x) * d(G(x)); the L2 form is clipped at zero and
/// renormalized, the exponential form needs no clipping.
double lp_skew_density(const ComparisonDensity& cd, double x);

}  // namespace lpstat
