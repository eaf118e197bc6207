#include "lpstat/regress.hpp"

#include <algorithm>
#include <cmath>

#include "lpstat/errors.hpp"
#include "lpstat/rng.hpp"

namespace lpstat {

ConditionalModel fit_conditional(const PairedSample& s, std::size_t m,
                                 const SelectionOptions& mean_rule, bool smooth_y_margin) {
    ConditionalModel out;
    out.cm_ = lp_comoments(s, m);

    // standardize the zero-order comoments before selection:
    // z_j = sqrt(n) LP(j,0) / sd(Y T_j(X))
    const std::size_t n = s.n();
    const std::size_t m1 = out.cm_.m1();
    std::vector<double> standardized(m1);
    for (std::size_t j = 0; j < m1; ++j) {
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto ix = *out.cm_.basis_x->dist().atom_index(s.x[i]);
            const double t = s.y[i] * out.cm_.basis_x->at(j + 1, ix);
            ss += (t - out.cm_.zero_col[j]) * (t - out.cm_.zero_col[j]);
        }
        const double sd = std::sqrt(ss / static_cast<double>(n));
        standardized[j] = sd > 0.0 ? out.cm_.zero_col[j] / sd : 0.0;
    }
    SelectionOptions rule = mean_rule;
    out.mean_sel_ = select_components(standardized, static_cast<double>(n), rule);

    if (smooth_y_margin) {
        Sample ys{s.y};
        auto g = Baseline::fit(Baseline::Kind::Normal, ys);
        auto coeffs = gof_components(ys, g, 6);
        auto sel = select_aic(coeffs, static_cast<double>(n));
        out.marginal_y_ = fit_l2(g, coeffs, sel, static_cast<double>(n));
    }
    return out;
}

ConditionalModel fit_conditional(const ContingencyTable& t, std::size_t m) {
    ConditionalModel out;
    out.cm_ = lp_comoments(t, m);
    out.mean_sel_.resize(out.cm_.m1());
    for (std::size_t j = 0; j < out.mean_sel_.size(); ++j) out.mean_sel_[j] = j;
    return out;
}

double conditional_mean(const ConditionalModel& m, double x) {
    double acc = m.cm_.mean_y;
    for (std::size_t j : m.mean_sel_)
        acc += m.cm_.zero_col[j] * m.cm_.basis_x->at_value(j + 1, x);
    return acc;
}

ConditionalSlice conditional_slice(const ConditionalModel& m, double u) {
    const auto& cm = m.cm_;
    const auto& dy = cm.basis_y->dist();
    std::vector<double> coeffs(cm.m2(), 0.0);
    for (std::size_t k = 0; k < cm.m2(); ++k)
        for (std::size_t j = 0; j < cm.m1(); ++j)
            coeffs[k] += cm.entries(j, k) * unit_score(*cm.basis_x, j + 1, u);

    ConditionalSlice out;
    out.cell_density.resize(dy.size());
    for (std::size_t l = 0; l < dy.size(); ++l) {
        double d = 1.0;
        for (std::size_t k = 0; k < cm.m2(); ++k) d += coeffs[k] * cm.basis_y->at(k + 1, l);
        out.cell_density[l] = std::max(0.0, d);
        out.normalizer += dy.masses()[l] * out.cell_density[l];
    }
    return out;
}

std::vector<double> conditional_pmf(const ConditionalModel& m, double u) {
    const auto& dy = m.cm_.basis_y->dist();
    auto slice = conditional_slice(m, u);
    if (slice.normalizer <= 0.0)
        throw NumericError("conditional density vanished after clipping");
    std::vector<double> pmf(dy.size());
    for (std::size_t l = 0; l < dy.size(); ++l)
        pmf[l] = dy.masses()[l] * slice.cell_density[l] / slice.normalizer;
    return pmf;
}

double conditional_density(const ConditionalModel& m, double u, double y) {
    if (!m.smooth_y_margin())
        throw DataError("continuous conditional density requires a smooth Y margin");
    const auto& dy = m.cm_.basis_y->dist();
    auto slice = conditional_slice(m, u);
    if (slice.normalizer <= 0.0)
        throw NumericError("conditional density vanished after clipping");
    const double v = midcdf(dy, y);
    double d;
    if (v <= 0.0)
        d = slice.cell_density.front();
    else if (v >= 1.0)
        d = slice.cell_density.back();
    else
        d = slice.cell_density[dy.quantile_cell(v)];
    return lp_skew_density(*m.marginal_y(), y) * d / slice.normalizer;
}

double conditional_quantile(const ConditionalModel& m, double u, double v,
                            const QuantileOptions& opt) {
    if (!(v > 0.0 && v < 1.0)) throw DataError("quantile level must lie in (0,1)");
    const auto& dy = m.cm_.basis_y->dist();
    auto slice = conditional_slice(m, u);
    if (slice.normalizer <= 0.0)
        throw NumericError("conditional density vanished after clipping");

    if (opt.path == QuantilePath::Invert) {
        // slice is piecewise constant over the Y cells: the CDF is piecewise
        // linear and inverts exactly
        const double target = v * slice.normalizer;
        double cum = 0.0;
        for (std::size_t l = 0; l < dy.size(); ++l) {
            const double seg = dy.masses()[l] * slice.cell_density[l];
            if (cum + seg >= target || l + 1 == dy.size()) {
                double t;
                if (seg > 0.0) {
                    const double left = dy.cumulative()[l] - dy.masses()[l];
                    t = left + dy.masses()[l] * (target - cum) / seg;
                } else {
                    t = dy.cumulative()[l];
                }
                t = std::clamp(t, 1e-12, 1.0 - 1e-12);
                return quantile(dy, t);
            }
            cum += seg;
        }
        return dy.atoms().back();
    }

    // accept-reject in the unit interval with an exact cell-max envelope
    double envelope = 0.0;
    for (double d : slice.cell_density) envelope = std::max(envelope, d);
    for (std::size_t g = 0; g < 1024; ++g) {
        const double t = (static_cast<double>(g) + 0.5) / 1024.0;
        envelope = std::max(envelope, slice.cell_density[dy.quantile_cell(t)]);
    }
    if (envelope <= 0.0) throw NumericError("conditional density vanished after clipping");

    Rng rng(opt.seed);
    std::vector<double> accepted;
    accepted.reserve(opt.draws);
    std::size_t guard = 0;
    while (accepted.size() < opt.draws && guard < opt.draws * 1000) {
        ++guard;
        const double t = rng.uniform();
        const double d = slice.cell_density[dy.quantile_cell(t)];
        if (rng.uniform() * envelope <= d) accepted.push_back(t);
    }
    if (accepted.empty()) throw NumericError("accept-reject produced no draws");
    std::sort(accepted.begin(), accepted.end());
    const double pos = v * static_cast<double>(accepted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    const double t = lo + 1 < accepted.size()
                         ? accepted[lo] * (1.0 - frac) + accepted[lo + 1] * frac
                         : accepted[lo];
    return quantile(dy, std::clamp(t, 1e-12, 1.0 - 1e-12));
}

}  // namespace lpstat
