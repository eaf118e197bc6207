#pragma once

#include <vector>

#include "lpstat/matrix.hpp"

namespace lpstat {

/// Exponential-family (maximum entropy) moment matching on a finite base
/// measure: find theta with E_theta[F] = target, where the tilted law is
///   c_i proportional to w_i exp(sum_f theta_f F(f,i)).
struct MaxentResult {
    std::vector<double> theta;
    double log_normalizer = 0.0;  // K(theta) relative to the base measure
    std::size_t iterations = 0;
    double residual = 0.0;  // sup-norm moment mismatch
};

struct MaxentOptions {
    double tol = 1e-10;
    std::size_t max_iterations = 200;
};

/// Newton iteration with backtracking line search on the convex dual
/// K(theta) - theta . target. Throws NumericError on non-convergence,
/// reporting the residual.
MaxentResult solve_maxent(const std::vector<double>& weights, const Matrix& features,
                          const std::vector<double>& target, const MaxentOptions& opt = {});

/// Solve a small symmetric positive (semi)definite system by Gaussian
/// elimination with partial pivoting; adds a tiny ridge on breakdown.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

}  // namespace lpstat
