#include "lpstat/comparison_density.hpp"

#include <algorithm>
#include <cmath>

#include "lpstat/errors.hpp"
#include "lpstat/legendre.hpp"
#include "lpstat/maxent.hpp"
#include "lpstat/quadrature.hpp"

namespace lpstat {

ComparisonDensity::ComparisonDensity(Baseline baseline, DensityForm form,
                                     std::vector<double> coeffs,
                                     std::vector<std::size_t> selected, std::optional<double> n)
    : baseline_(std::move(baseline)), form_(form), coeffs_(std::move(coeffs)),
      selected_(std::move(selected)), n_(n) {
    if (baseline_.is_discrete()) {
        double cover = 0.0;
        if (baseline_.kind() == Baseline::Kind::Poisson) cover = baseline_.params()[0] * 4 + 40;
        g_scores_ = std::make_shared<const ScoreBasis>(
            build_scores(baseline_.dist(cover), coeffs_.size()));
    }
    compute_normalizer();
}

double ComparisonDensity::score(std::size_t j, double u) const {
    if (g_scores_) return unit_score(*g_scores_, j, u);
    return legendre(static_cast<unsigned>(j), u);
}

double ComparisonDensity::density(double u) const {
    if (form_ == DensityForm::L2) {
        double acc = 1.0;
        for (std::size_t idx : selected_) acc += coeffs_[idx] * score(idx + 1, u);
        return acc;
    }
    double lin = 0.0;
    for (std::size_t idx : selected_) lin += coeffs_[idx] * score(idx + 1, u);
    return std::exp(lin - log_normalizer_);
}

double ComparisonDensity::density_clipped(double u) const {
    if (form_ == DensityForm::Exponential) return density(u);
    return std::max(0.0, density(u)) / clip_normalizer_;
}

void ComparisonDensity::compute_normalizer() {
    if (form_ == DensityForm::Exponential) {
        clip_normalizer_ = 1.0;
        clipped_mass_ = 0.0;
        return;
    }
    double pos = 0.0, neg = 0.0;
    if (g_scores_) {
        const auto& d = g_scores_->dist();
        for (std::size_t i = 0; i < d.size(); ++i) {
            double v = 1.0;
            for (std::size_t idx : selected_) v += coeffs_[idx] * g_scores_->at(idx + 1, i);
            pos += d.masses()[i] * std::max(0.0, v);
            neg += d.masses()[i] * std::max(0.0, -v);
        }
    } else {
        // d is a low-degree polynomial in u: place panel boundaries at its
        // sign changes (bisected to machine precision) so the clipped
        // integrand is smooth on every panel
        std::vector<double> brk{0.0, 1.0};
        const std::size_t scan = 1024;
        double prev_u = 0.0, prev_v = density(1e-15);
        for (std::size_t i = 1; i <= scan; ++i) {
            const double u = static_cast<double>(i) / scan;
            const double v = density(u == 1.0 ? 1.0 - 1e-15 : u);
            if ((prev_v < 0.0) != (v < 0.0)) {
                double lo = prev_u, hi = u, flo = prev_v;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = density(mid);
                    if ((flo < 0.0) == (fm < 0.0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                    if (hi - lo < 1e-15) break;
                }
                brk.push_back(0.5 * (lo + hi));
            }
            prev_u = u;
            prev_v = v;
        }
        std::sort(brk.begin(), brk.end());
        static const QuadratureRule cell = gauss_legendre(16, 0.0, 1.0);
        for (std::size_t p = 0; p + 1 < brk.size(); ++p) {
            const double a = brk[p], width = brk[p + 1] - brk[p];
            if (width <= 0.0) continue;
            for (std::size_t i = 0; i < cell.nodes.size(); ++i) {
                const double v = density(a + width * cell.nodes[i]);
                pos += width * cell.weights[i] * std::max(0.0, v);
                neg += width * cell.weights[i] * std::max(0.0, -v);
            }
        }
    }
    if (pos <= 0.0) throw NumericError("comparison density vanished after clipping");
    clip_normalizer_ = pos;
    clipped_mass_ = neg;
}

namespace {

std::vector<double> components_from_discrete(const DiscreteDist& data, const Baseline& g,
                                             std::size_t m) {
    double cover = data.atoms().back();
    const DiscreteDist& gd = g.dist(cover);
    auto scores = build_scores(gd, m);
    std::vector<double> out(scores.m(), 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto idx = gd.atom_index(data.atoms()[i]);
        if (!idx)
            throw DataError("observation outside the baseline support: " +
                            std::to_string(data.atoms()[i]));
        for (std::size_t j = 1; j <= scores.m(); ++j)
            out[j - 1] += data.masses()[i] * scores.at(j, *idx);
    }
    return out;
}

}  // namespace

std::vector<double> gof_components(const Sample& data, const Baseline& g, std::size_t m) {
    if (data.values.empty()) throw DataError("empty input");
    if (g.is_discrete()) return components_from_discrete(empirical_dist(data), g, m);
    std::vector<double> out(m, 0.0);
    for (double x : data.values) {
        if (!g.in_support(x))
            throw DataError("observation outside the baseline support: " + std::to_string(x));
        const double u = g.cdf(x);
        for (std::size_t j = 1; j <= m; ++j) out[j - 1] += legendre(static_cast<unsigned>(j), u);
    }
    for (double& v : out) v /= static_cast<double>(data.n());
    return out;
}

std::vector<double> gof_components(const DiscreteDist& data, const Baseline& g, std::size_t m) {
    if (!g.is_discrete()) throw DataError("distribution input requires a discrete baseline");
    return components_from_discrete(data, g, m);
}

GofStatistic gof_statistic(const std::vector<double>& coeffs,
                           const std::vector<std::size_t>& selected) {
    GofStatistic s;
    for (double c : coeffs) s.raw += c * c;
    for (std::size_t idx : selected) s.smooth += coeffs[idx] * coeffs[idx];
    s.df_raw = coeffs.size();
    s.df_smooth = selected.size();
    return s;
}

ComparisonDensity fit_l2(const Baseline& g, const std::vector<double>& coeffs,
                         const std::vector<std::size_t>& selected, std::optional<double> n) {
    return ComparisonDensity(g, DensityForm::L2, coeffs, selected, n);
}

ComparisonDensity fit_exponential(const Baseline& g, const std::vector<double>& target_coeffs,
                                  const std::vector<std::size_t>& selected,
                                  std::optional<double> n) {
    // cells: quadrature nodes (continuous G) or the atoms of G (discrete)
    std::vector<double> weights;
    Matrix features;
    std::shared_ptr<const ScoreBasis> scores;
    if (g.is_discrete()) {
        const DiscreteDist& gd = g.dist(g.kind() == Baseline::Kind::Poisson
                                            ? g.params()[0] * 4 + 40
                                            : 0.0);
        scores = std::make_shared<const ScoreBasis>(build_scores(gd, target_coeffs.size()));
        weights = gd.masses();
        features = Matrix(selected.size(), gd.size());
        for (std::size_t f = 0; f < selected.size(); ++f)
            for (std::size_t i = 0; i < gd.size(); ++i)
                features(f, i) = scores->at(selected[f] + 1, i);
    } else {
        static const QuadratureRule rule = graded_gauss_legendre(32, 8);
        weights = rule.weights;
        features = Matrix(selected.size(), rule.nodes.size());
        for (std::size_t f = 0; f < selected.size(); ++f)
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                features(f, i) =
                    legendre(static_cast<unsigned>(selected[f] + 1), rule.nodes[i]);
    }
    std::vector<double> target(selected.size());
    for (std::size_t f = 0; f < selected.size(); ++f) target[f] = target_coeffs[selected[f]];

    auto sol = solve_maxent(weights, features, target, {1e-10, 200});

    std::vector<double> theta(target_coeffs.size(), 0.0);
    for (std::size_t f = 0; f < selected.size(); ++f) theta[selected[f]] = sol.theta[f];
    ComparisonDensity cd(g, DensityForm::Exponential, theta, selected, n);
    cd.set_log_normalizer(sol.log_normalizer);
    return cd;
}

double lp_skew_density(const ComparisonDensity& cd, double x) {
    const Baseline& g = cd.baseline();
    const double gx = g.pdf(x);
    if (gx == 0.0) return 0.0;
    double u;
    if (g.is_discrete()) {
        const DiscreteDist& gd = g.dist();
        auto idx = gd.atom_index(x);
        if (!idx) return 0.0;
        u = gd.mid()[*idx];
    } else {
        u = g.cdf(x);
        if (u <= 0.0 || u >= 1.0) return 0.0;
    }
    return gx * cd.density_clipped(u);
}

}  // namespace lpstat
