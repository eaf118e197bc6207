#pragma once

#include <memory>
#include <vector>

#include "lpstat/discrete_dist.hpp"
#include "lpstat/matrix.hpp"

namespace lpstat {

/// Orthonormal score functions T_j(x) of a discrete distribution, built by
/// modified Gram-Schmidt (one reorthogonalization pass) on powers of
/// T_1 = (Fmid - 1/2)/sd(Fmid) under the mass-weighted inner product.
///
/// Sign convention: each T_j is scaled so its value at the largest atom with
/// a nonzero value is positive. Immutable after construction.
class ScoreBasis {
public:
    ScoreBasis(std::shared_ptr<const DiscreteDist> dist, Matrix table, bool clipped,
               bool truncated)
        : dist_(std::move(dist)), table_(std::move(table)), clipped_(clipped),
          truncated_(truncated) {}

    const DiscreteDist& dist() const { return *dist_; }
    std::shared_ptr<const DiscreteDist> dist_ptr() const { return dist_; }

    /// Number of score functions actually built (may be below the request).
    std::size_t m() const { return table_.rows(); }
    std::size_t n_atoms() const { return dist_->size(); }

    /// T_j at atom index i (j = 1..m).
    double at(std::size_t j, std::size_t atom_idx) const { return table_(j - 1, atom_idx); }

    /// T_j at an arbitrary point, extended as a right-continuous step
    /// function of x through the mid-distribution.
    double at_value(std::size_t j, double x) const;

    /// m x k table of values T_j(atom_i).
    const Matrix& table() const { return table_; }

    bool clipped() const { return clipped_; }      // request exceeded k-1
    bool truncated() const { return truncated_; }  // numerically dependent power

private:
    std::shared_ptr<const DiscreteDist> dist_;
    Matrix table_;
    bool clipped_ = false;
    bool truncated_ = false;
};

/// Build the first m score functions of d. Requires at least two atoms; the
/// effective order is clipped to (number of atoms - 1).
ScoreBasis build_scores(std::shared_ptr<const DiscreteDist> d, std::size_t m);
ScoreBasis build_scores(const DiscreteDist& d, std::size_t m);

/// Unit score S_j(u) = T_j(Q(u)), 0 < u < 1; piecewise constant with jumps at
/// the cumulative masses. A u exactly at a jump takes the right cell's value.
double unit_score(const ScoreBasis& b, std::size_t j, double u);

}  // namespace lpstat
