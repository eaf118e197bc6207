#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lpstat/discrete_dist.hpp"
#include "lpstat/matrix.hpp"
#include "lpstat/score_basis.hpp"
#include "lpstat/selection.hpp"

namespace lpstat {

struct PairedSample {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t n() const { return x.size(); }
};

/// Cross-moments of the score functions of two margins,
/// LP[j,k] = E[T_j(X) T_k(Y)], plus the zero-order row and column
/// LP[0,k] = E[X T_k(Y)] and LP[j,0] = E[Y T_j(X)].
///
/// Entries lie in [-1,1]; each is flagged significant under the default
/// threshold rule |sqrt(n) LP[j,k]| >= 1.96 (effect-size cutoff 0.1 when the
/// sample size is unknown).
struct LPComomentMatrix {
    Matrix entries;                    // m1 x m2
    std::vector<uint8_t> significant;  // row-major, same shape
    std::vector<double> zero_col;      // LP[j,0], length m1
    std::vector<double> zero_row;      // LP[0,k], length m2
    double mean_x = 0.0, mean_y = 0.0;
    std::optional<double> n;
    std::shared_ptr<const ScoreBasis> basis_x, basis_y;

    std::size_t m1() const { return entries.rows(); }
    std::size_t m2() const { return entries.cols(); }
    bool flagged(std::size_t j, std::size_t k) const { return significant[j * m2() + k] != 0; }

    /// Frobenius norm squared of the entries.
    double sum_squares() const;
};

LPComomentMatrix lp_comoments(const PairedSample& s, std::size_t m,
                              const SelectionOptions& flag_rule = {});
LPComomentMatrix lp_comoments(const ContingencyTable& t, std::size_t m,
                              const SelectionOptions& flag_rule = {});

/// LP[1,1]: the single-formula rank correlation, valid with ties.
double spearman_lp11(const PairedSample& s);
double spearman_lp11(const ContingencyTable& t);

/// Both sides of the covariance decomposition
/// Cov(X,Y) = sum_{j,k} LP(j;X) LP(k;Y) LP[j,k] under full bases.
std::pair<double, double> covariance_decomposition(const ContingencyTable& t);

/// Generalized Gini correlations of order j:
/// RGINI(j;Y|X) = E[T_j(X) Y]/E[T_j(Y) Y] and symmetrically in X.
std::pair<double, double> gini_correlations(const PairedSample& s, std::size_t j);

}  // namespace lpstat
