#include "lpstat/comoments.hpp"

#include <algorithm>
#include <cmath>

#include "lpstat/errors.hpp"
#include "lpstat/moments.hpp"

namespace lpstat {

double LPComomentMatrix::sum_squares() const {
    std::vector<double> sq(entries.data().size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = entries.data()[i] * entries.data()[i];
    return pairwise_sum(sq);
}

namespace {

void apply_flags(LPComomentMatrix& cm, const SelectionOptions& rule) {
    auto sel = select_components(cm.entries.data(), cm.n, rule);
    cm.significant.assign(cm.entries.data().size(), 0);
    for (auto idx : sel) cm.significant[idx] = 1;
}

std::vector<std::size_t> atom_indices(const DiscreteDist& d, const std::vector<double>& values) {
    std::vector<std::size_t> idx(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) idx[i] = *d.atom_index(values[i]);
    return idx;
}

}  // namespace

LPComomentMatrix lp_comoments(const PairedSample& s, std::size_t m,
                              const SelectionOptions& flag_rule) {
    if (s.x.size() != s.y.size()) throw DataError("paired sample lengths differ");
    const std::size_t n = s.n();
    if (n == 0) throw DataError("empty input");

    auto dx = std::make_shared<const DiscreteDist>(empirical_dist(Sample{s.x}));
    auto dy = std::make_shared<const DiscreteDist>(empirical_dist(Sample{s.y}));
    auto bx = std::make_shared<const ScoreBasis>(build_scores(dx, m));
    auto by = std::make_shared<const ScoreBasis>(build_scores(dy, m));

    const auto ix = atom_indices(*dx, s.x);
    const auto iy = atom_indices(*dy, s.y);
    const std::size_t m1 = bx->m(), m2 = by->m();

    LPComomentMatrix cm;
    cm.entries = Matrix(m1, m2);
    cm.basis_x = bx;
    cm.basis_y = by;
    cm.n = static_cast<double>(n);
    cm.mean_x = dx->mean();
    cm.mean_y = dy->mean();

    std::vector<double> terms(n);
    for (std::size_t j = 1; j <= m1; ++j) {
        for (std::size_t k = 1; k <= m2; ++k) {
            for (std::size_t i = 0; i < n; ++i) terms[i] = bx->at(j, ix[i]) * by->at(k, iy[i]);
            cm.entries(j - 1, k - 1) = pairwise_sum(terms) / static_cast<double>(n);
        }
    }
    cm.zero_col.resize(m1);
    for (std::size_t j = 1; j <= m1; ++j) {
        for (std::size_t i = 0; i < n; ++i) terms[i] = s.y[i] * bx->at(j, ix[i]);
        cm.zero_col[j - 1] = pairwise_sum(terms) / static_cast<double>(n);
    }
    cm.zero_row.resize(m2);
    for (std::size_t k = 1; k <= m2; ++k) {
        for (std::size_t i = 0; i < n; ++i) terms[i] = s.x[i] * by->at(k, iy[i]);
        cm.zero_row[k - 1] = pairwise_sum(terms) / static_cast<double>(n);
    }
    apply_flags(cm, flag_rule);
    return cm;
}

LPComomentMatrix lp_comoments(const ContingencyTable& t, std::size_t m,
                              const SelectionOptions& flag_rule) {
    auto [dxv, dyv] = table_margins(t);
    auto dx = std::make_shared<const DiscreteDist>(std::move(dxv));
    auto dy = std::make_shared<const DiscreteDist>(std::move(dyv));
    auto bx = std::make_shared<const ScoreBasis>(build_scores(dx, m));
    auto by = std::make_shared<const ScoreBasis>(build_scores(dy, m));
    const std::size_t m1 = bx->m(), m2 = by->m();
    const Matrix& P = t.probs();

    LPComomentMatrix cm;
    cm.entries = Matrix(m1, m2);
    cm.basis_x = bx;
    cm.basis_y = by;
    cm.n = t.n();
    cm.mean_x = dx->mean();
    cm.mean_y = dy->mean();

    std::vector<double> terms(P.rows() * P.cols());
    for (std::size_t j = 1; j <= m1; ++j)
        for (std::size_t k = 1; k <= m2; ++k) {
            std::size_t c = 0;
            for (std::size_t i = 0; i < P.rows(); ++i)
                for (std::size_t l = 0; l < P.cols(); ++l)
                    terms[c++] = P(i, l) * bx->at(j, i) * by->at(k, l);
            cm.entries(j - 1, k - 1) = pairwise_sum(terms);
        }
    cm.zero_col.assign(m1, 0.0);
    cm.zero_row.assign(m2, 0.0);
    for (std::size_t j = 1; j <= m1; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < P.rows(); ++i)
            for (std::size_t l = 0; l < P.cols(); ++l)
                acc += P(i, l) * dy->atoms()[l] * bx->at(j, i);
        cm.zero_col[j - 1] = acc;
    }
    for (std::size_t k = 1; k <= m2; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < P.rows(); ++i)
            for (std::size_t l = 0; l < P.cols(); ++l)
                acc += P(i, l) * dx->atoms()[i] * by->at(k, l);
        cm.zero_row[k - 1] = acc;
    }
    apply_flags(cm, flag_rule);
    return cm;
}

double spearman_lp11(const PairedSample& s) {
    return lp_comoments(s, 1).entries(0, 0);
}

double spearman_lp11(const ContingencyTable& t) {
    return lp_comoments(t, 1).entries(0, 0);
}

std::pair<double, double> covariance_decomposition(const ContingencyTable& t) {
    const Matrix& P = t.probs();
    const std::size_t full_m = std::max(P.rows(), P.cols());
    auto cm = lp_comoments(t, full_m);  // clipped to k-1 per margin

    const auto& dx = cm.basis_x->dist();
    const auto& dy = cm.basis_y->dist();
    double cov = 0.0;
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t l = 0; l < P.cols(); ++l)
            cov += P(i, l) * (dx.atoms()[i] - cm.mean_x) * (dy.atoms()[l] - cm.mean_y);

    auto mx = lp_moments(dx, *cm.basis_x, cm.m1());
    auto my = lp_moments(dy, *cm.basis_y, cm.m2());
    double decomp = 0.0;
    for (std::size_t j = 0; j < cm.m1(); ++j)
        for (std::size_t k = 0; k < cm.m2(); ++k)
            decomp += mx.coeffs[j] * my.coeffs[k] * cm.entries(j, k);
    return {cov, decomp};
}

std::pair<double, double> gini_correlations(const PairedSample& s, std::size_t j) {
    if (j < 1) throw DataError("Gini order must be at least 1");
    auto cm = lp_comoments(s, j);
    if (cm.m1() < j || cm.m2() < j)
        throw DataError("Gini order exceeds available basis size");
    auto mx = lp_moments(cm.basis_x->dist(), *cm.basis_x, j);
    auto my = lp_moments(cm.basis_y->dist(), *cm.basis_y, j);
    const double denom_y = my.coeffs[j - 1];  // E[T_j(Y) Y]
    const double denom_x = mx.coeffs[j - 1];  // E[T_j(X) X]
    if (std::abs(denom_y) < 1e-14 || std::abs(denom_x) < 1e-14)
        throw DataError("Gini undefined at order " + std::to_string(j));
    return {cm.zero_col[j - 1] / denom_y, cm.zero_row[j - 1] / denom_x};
}

}  // namespace lpstat
