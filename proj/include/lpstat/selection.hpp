#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpstat/errors.hpp"

namespace lpstat {

/// Component selection rules shared by the goodness-of-fit, comoment and
/// dependence modules.
///
/// - Threshold: flag coefficients with |sqrt(n) c| >= z (default z = 1.96,
///   the asymptotic 5% null cut). Without a sample size this degenerates to
///   the EffectSize rule.
/// - Aic / Bic: order by c^2 descending, keep the prefix maximizing
///   n * cumsum(c^2) - penalty * k with penalty 2 (AIC) or log n (BIC).
/// - EffectSize: flag |c| >= cutoff (default 0.1); the only rule available
///   when n is unknown.
/// - All: keep everything.
enum class SelectionRule { Threshold, Aic, Bic, EffectSize, All };

struct SelectionOptions {
    SelectionRule rule = SelectionRule::Threshold;
    double z = 1.96;
    double effect_cutoff = 0.1;
};

inline SelectionRule selection_rule_from_string(const std::string& s) {
    if (s == "threshold") return SelectionRule::Threshold;
    if (s == "aic") return SelectionRule::Aic;
    if (s == "bic") return SelectionRule::Bic;
    if (s == "effect") return SelectionRule::EffectSize;
    if (s == "all") return SelectionRule::All;
    throw DataError("unknown selection rule: " + s);
}

inline std::string to_string(SelectionRule r) {
    switch (r) {
        case SelectionRule::Threshold: return "threshold";
        case SelectionRule::Aic: return "aic";
        case SelectionRule::Bic: return "bic";
        case SelectionRule::EffectSize: return "effect";
        case SelectionRule::All: return "all";
    }
    return "?";
}

/// Indices of the selected coefficients (ascending). Penalized rules pick
/// the best prefix of the magnitude ordering; the empty set is allowed.
inline std::vector<std::size_t> select_components(std::span<const double> coeffs,
                                                  std::optional<double> n,
                                                  const SelectionOptions& opt = {}) {
    std::vector<std::size_t> out;
    const std::size_t m = coeffs.size();
    SelectionRule rule = opt.rule;
    if ((rule == SelectionRule::Threshold || rule == SelectionRule::Aic ||
         rule == SelectionRule::Bic) &&
        !n)
        rule = SelectionRule::EffectSize;

    switch (rule) {
        case SelectionRule::All:
            out.resize(m);
            std::iota(out.begin(), out.end(), std::size_t{0});
            return out;
        case SelectionRule::Threshold: {
            const double cut = opt.z / std::sqrt(*n);
            for (std::size_t i = 0; i < m; ++i)
                if (std::abs(coeffs[i]) >= cut) out.push_back(i);
            return out;
        }
        case SelectionRule::EffectSize: {
            for (std::size_t i = 0; i < m; ++i)
                if (std::abs(coeffs[i]) >= opt.effect_cutoff) out.push_back(i);
            return out;
        }
        case SelectionRule::Aic:
        case SelectionRule::Bic: {
            const double penalty = (rule == SelectionRule::Aic) ? 2.0 : std::log(*n);
            std::vector<std::size_t> order(m);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return coeffs[a] * coeffs[a] > coeffs[b] * coeffs[b];
            });
            double best = 0.0, run = 0.0;
            std::size_t best_k = 0;
            for (std::size_t k = 0; k < m; ++k) {
                run += *n * coeffs[order[k]] * coeffs[order[k]];
                const double crit = run - penalty * static_cast<double>(k + 1);
                if (crit > best) {
                    best = crit;
                    best_k = k + 1;
                }
            }
            out.assign(order.begin(), order.begin() + best_k);
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    return out;
}

/// AIC selection exactly as used for goodness-of-fit components.
inline std::vector<std::size_t> select_aic(std::span<const double> coeffs, double n) {
    return select_components(coeffs, n, {SelectionRule::Aic, 1.96, 0.1});
}

}  // namespace lpstat
