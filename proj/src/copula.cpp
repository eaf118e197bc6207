#include "lpstat/copula.hpp"

#include <cmath>

#include "lpstat/errors.hpp"
#include "lpstat/maxent.hpp"
#include "lpstat/svd.hpp"

namespace lpstat {

namespace {

// Entries restricted to a selection (zeros elsewhere).
Matrix restrict_entries(const LPComomentMatrix& cm,
                        const std::vector<std::pair<std::size_t, std::size_t>>& sel) {
    Matrix e(cm.m1(), cm.m2());
    for (auto [j, k] : sel) e(j, k) = cm.entries(j, k);
    return e;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> flagged_selection(const LPComomentMatrix& cm) {
    std::vector<std::pair<std::size_t, std::size_t>> sel;
    for (std::size_t j = 0; j < cm.m1(); ++j)
        for (std::size_t k = 0; k < cm.m2(); ++k)
            if (cm.flagged(j, k)) sel.emplace_back(j, k);
    return sel;
}

std::vector<std::pair<std::size_t, std::size_t>> full_selection(const LPComomentMatrix& cm) {
    std::vector<std::pair<std::size_t, std::size_t>> sel;
    for (std::size_t j = 0; j < cm.m1(); ++j)
        for (std::size_t k = 0; k < cm.m2(); ++k) sel.emplace_back(j, k);
    return sel;
}

double CopulaModel::density(double u, double v) const {
    const ScoreBasis& bx = *cm_.basis_x;
    const ScoreBasis& by = *cm_.basis_y;
    if (form_ == CopulaForm::Exponential) {
        double lin = 0.0;
        for (auto [j, k] : selection_)
            lin += theta_(j, k) * unit_score(bx, j + 1, u) * unit_score(by, k + 1, v);
        for (std::size_t j = 0; j < alpha_.size(); ++j)
            lin += alpha_[j] * unit_score(bx, j + 1, u);
        for (std::size_t k = 0; k < beta_.size(); ++k)
            lin += beta_[k] * unit_score(by, k + 1, v);
        return std::exp(lin - log_k_);
    }
    double acc = 1.0;
    for (std::size_t j = 0; j < effective_.rows(); ++j) {
        if (row_is_zero_[j]) continue;
        const double sj = unit_score(bx, j + 1, u);
        if (sj == 0.0) continue;
        for (std::size_t k = 0; k < effective_.cols(); ++k) {
            const double w = effective_(j, k);
            if (w != 0.0) acc += w * sj * unit_score(by, k + 1, v);
        }
    }
    return acc;
}

double CopulaModel::phi(std::size_t k, double u) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < u_.rows(); ++j)
        acc += u_(j, k) * unit_score(*cm_.basis_x, j + 1, u);
    return acc;
}

double CopulaModel::psi(std::size_t k, double v) const {
    double acc = 0.0;
    for (std::size_t l = 0; l < v_.rows(); ++l)
        acc += v_(l, k) * unit_score(*cm_.basis_y, l + 1, v);
    return acc;
}

std::vector<double> CopulaModel::slice_coeffs(double u, bool transpose) const {
    const Matrix& e = effective_;
    if (!transpose) {
        std::vector<double> out(e.cols(), 0.0);
        for (std::size_t j = 0; j < e.rows(); ++j) {
            const double sj = unit_score(*cm_.basis_x, j + 1, u);
            for (std::size_t k = 0; k < e.cols(); ++k) out[k] += e(j, k) * sj;
        }
        return out;
    }
    std::vector<double> out(e.rows(), 0.0);
    for (std::size_t k = 0; k < e.cols(); ++k) {
        const double sk = unit_score(*cm_.basis_y, k + 1, u);
        for (std::size_t j = 0; j < e.rows(); ++j) out[j] += e(j, k) * sk;
    }
    return out;
}

double CopulaModel::slice_density(double u, double v, bool transpose) const {
    const double uu = transpose ? v : u;
    const double vv = transpose ? u : v;
    if (form_ != CopulaForm::Exponential) {
        auto coeffs = slice_coeffs(transpose ? v : u, transpose);
        const ScoreBasis& b = transpose ? *cm_.basis_x : *cm_.basis_y;
        double acc = 1.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            acc += coeffs[k] * unit_score(b, k + 1, transpose ? u : v);
        return acc;
    }
    // exponential form: renormalize the (u, .) section exactly over the
    // conditioned margin's cells
    const ScoreBasis& b = transpose ? *cm_.basis_x : *cm_.basis_y;
    const auto& d = b.dist();
    double z = 0.0;
    for (std::size_t l = 0; l < d.size(); ++l) {
        const double w = transpose ? density(d.mid()[l], vv) : density(uu, d.mid()[l]);
        z += d.masses()[l] * w;
    }
    const double val = transpose ? density(vv, uu) : density(uu, vv);
    return val / z;
}

CopulaModel fit_l2_copula(const LPComomentMatrix& cm,
                          const std::vector<std::pair<std::size_t, std::size_t>>& selection) {
    CopulaModel m;
    m.form_ = CopulaForm::L2;
    m.cm_ = cm;
    m.selection_ = selection;
    m.effective_ = restrict_entries(cm, selection);
    m.init_row_flags();
    return m;
}

CopulaModel fit_canonical_copula(const LPComomentMatrix& cm, std::size_t r) {
    const std::size_t full = std::min(cm.m1(), cm.m2());
    if (r > full) throw DataError("rank exceeds the comoment matrix dimensions");
    auto svd = jacobi_svd(cm.entries);
    // sign convention: first nonzero component of each left vector positive
    for (std::size_t k = 0; k < svd.s.size(); ++k) {
        double sign = 0.0;
        for (std::size_t j = 0; j < svd.u.rows(); ++j) {
            if (svd.u(j, k) != 0.0) {
                sign = svd.u(j, k) > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        if (sign < 0.0) {
            for (std::size_t j = 0; j < svd.u.rows(); ++j) svd.u(j, k) = -svd.u(j, k);
            for (std::size_t l = 0; l < svd.v.rows(); ++l) svd.v(l, k) = -svd.v(l, k);
        }
    }
    CopulaModel m;
    m.form_ = CopulaForm::Canonical;
    m.cm_ = cm;
    m.rank_ = r;
    m.svals_.assign(svd.s.begin(), svd.s.end());
    m.u_ = std::move(svd.u);
    m.v_ = std::move(svd.v);
    m.selection_ = full_selection(cm);
    m.effective_ = Matrix(cm.m1(), cm.m2());
    for (std::size_t j = 0; j < cm.m1(); ++j)
        for (std::size_t k = 0; k < cm.m2(); ++k) {
            double acc = 0.0;
            for (std::size_t t = 0; t < r; ++t) acc += m.svals_[t] * m.u_(j, t) * m.v_(k, t);
            m.effective_(j, k) = acc;
        }
    m.init_row_flags();
    return m;
}

CopulaModel fit_exponential_copula(
    const LPComomentMatrix& cm,
    const std::vector<std::pair<std::size_t, std::size_t>>& selection) {
    const auto& dx = cm.basis_x->dist();
    const auto& dy = cm.basis_y->dist();
    const std::size_t k1 = dx.size(), k2 = dy.size();
    if (k1 * k2 > (std::size_t{1} << 22))
        throw NumericError("margins too large for the exponential copula fit");

    const std::size_t m1 = cm.m1(), m2 = cm.m2();
    const std::size_t nfeat = selection.size() + m1 + m2;
    std::vector<double> weights(k1 * k2);
    Matrix features(nfeat, k1 * k2);
    for (std::size_t i = 0; i < k1; ++i)
        for (std::size_t l = 0; l < k2; ++l) {
            const std::size_t c = i * k2 + l;
            weights[c] = dx.masses()[i] * dy.masses()[l];
            std::size_t f = 0;
            for (auto [j, k] : selection)
                features(f++, c) = cm.basis_x->at(j + 1, i) * cm.basis_y->at(k + 1, l);
            for (std::size_t j = 1; j <= m1; ++j) features(f++, c) = cm.basis_x->at(j, i);
            for (std::size_t k = 1; k <= m2; ++k) features(f++, c) = cm.basis_y->at(k, l);
        }
    std::vector<double> target(nfeat, 0.0);
    for (std::size_t f = 0; f < selection.size(); ++f)
        target[f] = cm.entries(selection[f].first, selection[f].second);
    // margin features target 0: both margins stay uniform

    auto sol = solve_maxent(weights, features, target, {1e-11, 200});

    CopulaModel m;
    m.form_ = CopulaForm::Exponential;
    m.cm_ = cm;
    m.selection_ = selection;
    m.theta_ = Matrix(m1, m2);
    std::size_t f = 0;
    for (auto [j, k] : selection) m.theta_(j, k) = sol.theta[f++];
    m.alpha_.assign(sol.theta.begin() + f, sol.theta.begin() + f + m1);
    m.beta_.assign(sol.theta.begin() + f + m1, sol.theta.end());
    m.log_k_ = sol.log_normalizer;
    m.effective_ = restrict_entries(cm, selection);
    m.init_row_flags();
    return m;
}

void CopulaModel::init_row_flags() {
    row_is_zero_.assign(effective_.rows(), true);
    for (std::size_t j = 0; j < effective_.rows(); ++j)
        for (std::size_t k = 0; k < effective_.cols(); ++k)
            if (effective_(j, k) != 0.0) {
                row_is_zero_[j] = false;
                break;
            }
}

TwoByTwoIdentities two_by_two_identities(const ContingencyTable& t) {
    if (t.n_rows() != 2 || t.n_cols() != 2) throw DataError("table must be 2x2");
    const Matrix& p = t.probs();
    const double p1p = p(0, 0) + p(0, 1), p2p = p(1, 0) + p(1, 1);
    const double pp1 = p(0, 0) + p(1, 0), pp2 = p(0, 1) + p(1, 1);

    TwoByTwoIdentities out;
    out.abs_phi =
        std::abs((p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0)) / std::sqrt(p1p * pp1 * p2p * pp2));

    auto cm = lp_comoments(t, 1);
    auto canon = fit_canonical_copula(cm, 1);
    out.lambda1 = canon.singular_values()[0];

    const bool all_positive =
        p(0, 0) > 0.0 && p(0, 1) > 0.0 && p(1, 0) > 0.0 && p(1, 1) > 0.0;
    if (all_positive) {
        auto expm = fit_exponential_copula(cm, {{0, 0}});
        out.gamma1 = std::abs(expm.theta()(0, 0));
        const double delta = p(0, 0) * p(1, 1) / (p(0, 1) * p(1, 0));
        out.log_odds_form = std::abs(std::log(delta)) * std::sqrt(p1p * pp1 * p2p * pp2);
    }
    return out;
}

}  // namespace lpstat
