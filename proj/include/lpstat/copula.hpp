#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lpstat/comoments.hpp"
#include "lpstat/matrix.hpp"

namespace lpstat {

enum class CopulaForm { L2, Exponential, Canonical };

/// Copula density model on (0,1)^2 built from an LP comoment matrix.
///
///   L2:          cop(u,v) = 1 + sum_sel LP[j,k] S_j(u;X) S_k(v;Y)
///   Canonical:   cop(u,v) = 1 + sum_k lambda_k phi_k(u) psi_k(v),
///                the SVD reparameterization of the full L2 form
///   Exponential: cop(u,v) = exp(sum theta_jk S_j S_k
///                               + sum alpha_j S_j + sum beta_k S_k - K);
///                the margin terms hold both margins uniform, so for a
///                saturated discrete table the fit reproduces it exactly.
class CopulaModel {
public:
    CopulaForm form() const { return form_; }
    const LPComomentMatrix& comoments() const { return cm_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& selection() const { return selection_; }

    const std::vector<double>& singular_values() const { return svals_; }
    const Matrix& left_vectors() const { return u_; }   // m1 x r
    const Matrix& right_vectors() const { return v_; }  // m2 x r
    std::size_t rank() const { return rank_; }

    const Matrix& theta() const { return theta_; }  // m1 x m2 (zeros off-selection)
    const std::vector<double>& theta_margin_x() const { return alpha_; }
    const std::vector<double>& theta_margin_y() const { return beta_; }
    double log_normalizer() const { return log_k_; }

    double density(double u, double v) const;

    /// phi_k(u) = sum_j U[j,k] S_j(u;X); psi_k(v) analogous.
    double phi(std::size_t k, double u) const;
    double psi(std::size_t k, double v) const;

    /// Coefficients of the conditional comparison density in v at fixed u:
    /// LP[k; Y | X = Q(u)] = sum_j LP[j,k] S_j(u;X). With `transpose`, the
    /// slice runs in u at fixed v.
    std::vector<double> slice_coeffs(double u, bool transpose = false) const;

    /// d(v; Y | X = Q(u)) evaluated from the model (renormalized for the
    /// exponential form).
    double slice_density(double u, double v, bool transpose = false) const;

    friend CopulaModel fit_l2_copula(const LPComomentMatrix&,
                                     const std::vector<std::pair<std::size_t, std::size_t>>&);
    friend CopulaModel fit_canonical_copula(const LPComomentMatrix&, std::size_t);
    friend CopulaModel fit_exponential_copula(const LPComomentMatrix&,
                                              const std::vector<std::pair<std::size_t, std::size_t>>&);

private:
    void init_row_flags();

    CopulaForm form_ = CopulaForm::L2;
    LPComomentMatrix cm_;
    std::vector<std::pair<std::size_t, std::size_t>> selection_;
    std::vector<double> svals_;
    Matrix u_, v_;
    std::size_t rank_ = 0;
    Matrix theta_;
    std::vector<double> alpha_, beta_;
    double log_k_ = 0.0;
    Matrix effective_;  // selection-restricted (or rank-truncated) entries
    std::vector<uint8_t> row_is_zero_;
};

/// L2 model over the selected (j,k) pairs (0-based indices into the comoment
/// matrix). An empty selection yields the independence copula.
CopulaModel fit_l2_copula(const LPComomentMatrix& cm,
                          const std::vector<std::pair<std::size_t, std::size_t>>& selection);

/// Selection of the flagged entries of cm.
std::vector<std::pair<std::size_t, std::size_t>> flagged_selection(const LPComomentMatrix& cm);
std::vector<std::pair<std::size_t, std::size_t>> full_selection(const LPComomentMatrix& cm);

/// Canonical (SVD) model truncated at rank r. Sign convention: the first
/// nonzero component of each left singular vector is positive.
CopulaModel fit_canonical_copula(const LPComomentMatrix& cm, std::size_t r);

/// Maximum-entropy model: theta such that the model comoments match the
/// selected entries of cm; margin uniformity is enforced through the
/// first-order score features of both margins.
CopulaModel fit_exponential_copula(const LPComomentMatrix& cm,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& selection);

/// Both sides of the 2x2 identities: lambda_1 = |phi| (Pearson correlation)
/// and gamma_1 = |log delta| (P1+ P+1 P2+ P+2)^(1/2) with delta the odds
/// ratio. The gamma branch requires four positive cells.
struct TwoByTwoIdentities {
    double lambda1 = 0.0;
    double abs_phi = 0.0;
    std::optional<double> gamma1;
    std::optional<double> log_odds_form;
};
TwoByTwoIdentities two_by_two_identities(const ContingencyTable& t);

}  // namespace lpstat
