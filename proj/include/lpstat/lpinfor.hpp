#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lpstat/comoments.hpp"
#include "lpstat/selection.hpp"

namespace lpstat {

/// Dependence measure: raw = squared Frobenius norm of the comoment matrix
/// (= chi^2/n for tables with full bases); smooth = sum over the selected
/// entries; linearity = LP[1,1]^2 / smooth when the (1,1) entry is selected.
struct LPInforResult {
    double raw = 0.0;
    double smooth = 0.0;
    std::size_t df_raw = 0;
    std::size_t df_smooth = 0;
    std::optional<double> linearity;
    std::optional<double> pvalue;  // permutation p-value of the raw statistic
    std::uint64_t seed = 0;
    std::size_t permutations = 0;
    SelectionRule rule = SelectionRule::Threshold;
};

struct LpinforOptions {
    std::size_t m = 4;
    SelectionOptions selection = {};
    std::size_t permutations = 0;  // 0 = no p-value
    std::uint64_t seed = 1;
    std::size_t threads = 1;
};

LPInforResult lpinfor(const PairedSample& s, const LpinforOptions& opt = {});
LPInforResult lpinfor(const ContingencyTable& t, const LpinforOptions& opt = {});
LPInforResult lpinfor(const LPComomentMatrix& cm, const SelectionOptions& selection);

/// Closed form for the bivariate normal: rho^2 / (1 - rho^2), |rho| < 1.
double gaussian_lpinfor(double rho);

/// Chi-square divergence chi^2/n = sum p(x)p(y) [cop - 1]^2 of a table.
double chidiv(const ContingencyTable& t);

enum class TestStatistic { LpinforRaw, LpinforSmooth, AbsEntry, AbsPearson, AbsSpearman };

struct PermutationTest {
    TestStatistic statistic = TestStatistic::LpinforRaw;
    std::size_t entry_j = 0, entry_k = 0;  // for AbsEntry (1-based orders)
    std::size_t m = 4;
    SelectionOptions selection = {};
    std::size_t replicates = 999;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
};

struct PermutationResult {
    double observed = 0.0;
    double pvalue = 1.0;
    std::uint64_t seed = 0;
    std::size_t replicates = 0;
};

/// Permutation test of independence: Y is re-paired with X uniformly at
/// random; p = (1 + #{replicate stat >= observed}) / (B + 1). Replicate
/// streams are derived by counter-based splitting, so the result depends
/// only on (seed, B), not on the worker count.
PermutationResult permutation_pvalue(const PairedSample& s, const PermutationTest& cfg);
PermutationResult permutation_pvalue(const ContingencyTable& t, const PermutationTest& cfg);

/// Expand a count table into the paired sample of category codes.
PairedSample table_to_pairs(const ContingencyTable& t);

/// Conditional dependence profile along u: component coefficients
/// LP[k; Y | X = Q(u)] and their squared sum.
struct ConditionalCurve {
    std::vector<double> u;
    Matrix components;          // len(u) x m2
    std::vector<double> value;  // squared sums
};
ConditionalCurve conditional_lpinfor(const LPComomentMatrix& cm, const std::vector<double>& u_grid);

/// Mass-weighted average of the conditional profile over the X margin;
/// equals the raw statistic exactly under full bases.
double conditional_lpinfor_mixture(const LPComomentMatrix& cm);

}  // namespace lpstat
