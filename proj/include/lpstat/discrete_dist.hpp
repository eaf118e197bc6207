#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpstat/matrix.hpp"

namespace lpstat {

/// A raw univariate sample.
struct Sample {
    std::vector<double> values;

    std::size_t n() const { return values.size(); }
};

/// Finite probability law on an ordered set of real atoms, together with the
/// distribution function F and the mid-distribution Fmid(x) = F(x) - p(x)/2.
///
/// Invariants (validated at construction): atoms strictly increasing, masses
/// strictly positive summing to 1 within 1e-12. Zero-mass atoms are dropped.
/// Immutable after construction.
class DiscreteDist {
public:
    DiscreteDist() = default;

    /// Build from atoms and (possibly unnormalized) nonnegative weights.
    static DiscreteDist from_masses(std::vector<double> atoms, std::vector<double> masses);

    const std::vector<double>& atoms() const { return atoms_; }
    const std::vector<double>& masses() const { return masses_; }
    const std::vector<double>& cumulative() const { return cumulative_; }
    const std::vector<double>& mid() const { return mid_; }
    std::size_t size() const { return atoms_.size(); }

    double mean() const;
    double variance() const;

    /// Index of the atom equal to x, if any.
    std::optional<std::size_t> atom_index(double x) const;

    /// Index of the cell containing u under the left-continuous inverse:
    /// smallest i with cumulative[i] >= u.
    std::size_t quantile_cell(double u) const;

    /// Cell index with jump points assigned to the right cell: smallest i
    /// with cumulative[i] > u. Used by unit score evaluation.
    std::size_t right_cell(double u) const;

private:
    std::vector<double> atoms_;
    std::vector<double> masses_;
    std::vector<double> cumulative_;
    std::vector<double> mid_;
};

/// Empirical distribution of a sample; ties collapse into single atoms.
DiscreteDist empirical_dist(const Sample& s);

/// Mid-distribution function F(x) - 0.5 p(x); equals F(x) off the atoms.
double midcdf(const DiscreteDist& d, double x);

/// Left-continuous inverse: the smallest atom x with F(x) >= u, 0 < u < 1.
double quantile(const DiscreteDist& d, double u);

/// Var[Fmid(X)] = (1 - sum p^3)/12.
double midvar(const DiscreteDist& d);

/// Two-way table of counts or probabilities with labeled categories.
/// If the entries sum to <= 1 + 1e-9 they are taken as probabilities
/// (n absent unless supplied); otherwise counts are normalized and the
/// total is retained as n.
class ContingencyTable {
public:
    ContingencyTable(Matrix entries,
                     std::vector<std::string> row_labels = {},
                     std::vector<std::string> col_labels = {},
                     std::optional<double> n = std::nullopt);

    const Matrix& probs() const { return probs_; }
    std::optional<double> n() const { return n_; }
    std::size_t n_rows() const { return probs_.rows(); }
    std::size_t n_cols() const { return probs_.cols(); }
    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

private:
    Matrix probs_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    std::optional<double> n_;
};

/// Row and column marginal distributions with atoms at category codes
/// 0..I-1 and 0..J-1. Errors on an all-zero row or column.
std::pair<DiscreteDist, DiscreteDist> table_margins(const ContingencyTable& t);

}  // namespace lpstat
