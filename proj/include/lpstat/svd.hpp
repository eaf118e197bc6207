#pragma once

#include <vector>

#include "lpstat/matrix.hpp"

namespace lpstat {

/// Thin SVD A = U diag(s) V^T of a small dense matrix by one-sided Jacobi
/// rotations. Singular values are sorted descending; U is rows(A) x r and
/// V is cols(A) x r with r = min(rows, cols). Bit-reproducible, no external
/// dependencies; intended for comoment-sized matrices.
struct SvdResult {
    Matrix u;
    std::vector<double> s;
    Matrix v;
};

SvdResult jacobi_svd(const Matrix& a);

}  // namespace lpstat
