#pragma once

#include <cstdint>
#include <vector>

namespace lpstat {

/// Shifted orthonormal Legendre polynomial Leg_j on [0,1]:
/// Leg_j(u) = sqrt(2j+1) P_j(2u-1), evaluated by the three-term recurrence.
double legendre(unsigned j, double u);

/// Monomial coefficients of the shifted orthonormal Legendre polynomials.
/// The integer part of each coefficient is exact:
///   Leg_j(u) = sqrt(2j+1) * sum_l c[j][l] u^l,
///   c[j][l] = (-1)^(j+l) C(j,l) C(j+l,l).
/// Supports degrees up to max_degree (exact in 64-bit through degree 16).
class LegendreBasis {
public:
    explicit LegendreBasis(unsigned max_degree);

    unsigned max_degree() const { return static_cast<unsigned>(coeffs_.size()) - 1; }
    const std::vector<std::int64_t>& integer_coeffs(unsigned j) const { return coeffs_.at(j); }

    /// Evaluate from the coefficient table (test cross-check against the
    /// recurrence path).
    double eval(unsigned j, double u) const;

    /// max_{j,l<=deg} |int_0^1 Leg_j Leg_l du - delta_jl| from the exact
    /// integer coefficients and exact monomial integrals.
    double orthonormality_defect() const;

private:
    std::vector<std::vector<std::int64_t>> coeffs_;
};

}  // namespace lpstat
