#include "lpstat/correspondence.hpp"

#include <cmath>

#include "lpstat/errors.hpp"
#include "lpstat/svd.hpp"

namespace lpstat {

CorrespondenceResult correspondence_analysis(const ContingencyTable& t, std::size_t r,
                                             CorrespondenceVariant variant) {
    const std::size_t full = std::min(t.n_rows(), t.n_cols()) - 1;
    if (r < 1 || r > full) throw DataError("rank must lie in 1..min(I,J)-1");

    const std::size_t m = std::max(t.n_rows(), t.n_cols());  // clipped per margin
    auto cm = lp_comoments(t, m);

    // canonical directions: SVD of the comoments (CA) or of the
    // exponential-model interaction matrix (Goodman)
    Matrix kernel;
    if (variant == CorrespondenceVariant::CA) {
        kernel = cm.entries;
    } else {
        auto expm = fit_exponential_copula(cm, full_selection(cm));
        kernel = expm.theta();
    }
    auto svd = jacobi_svd(kernel);
    for (std::size_t k = 0; k < svd.s.size(); ++k) {
        double sign = 0.0;
        for (std::size_t j = 0; j < svd.u.rows(); ++j)
            if (svd.u(j, k) != 0.0) {
                sign = svd.u(j, k) > 0.0 ? 1.0 : -1.0;
                break;
            }
        if (sign < 0.0) {
            for (std::size_t j = 0; j < svd.u.rows(); ++j) svd.u(j, k) = -svd.u(j, k);
            for (std::size_t l = 0; l < svd.v.rows(); ++l) svd.v(l, k) = -svd.v(l, k);
        }
    }

    const ScoreBasis& bx = *cm.basis_x;
    const ScoreBasis& by = *cm.basis_y;
    CorrespondenceResult out;
    out.variant = variant;
    out.rank = r;
    out.row_labels = t.row_labels();
    out.col_labels = t.col_labels();
    out.row_mass = bx.dist().masses();
    out.col_mass = by.dist().masses();
    out.singular_values = svd.s;
    double total = 0.0;
    for (double s : svd.s) total += s * s;
    out.inertia_share.resize(svd.s.size());
    for (std::size_t k = 0; k < svd.s.size(); ++k)
        out.inertia_share[k] = total > 0.0 ? svd.s[k] * svd.s[k] / total : 0.0;

    out.row_coords = Matrix(t.n_rows(), r);
    for (std::size_t i = 0; i < t.n_rows(); ++i)
        for (std::size_t k = 0; k < r; ++k) {
            double phi = 0.0;
            for (std::size_t j = 0; j < svd.u.rows(); ++j) phi += svd.u(j, k) * bx.at(j + 1, i);
            out.row_coords(i, k) = svd.s[k] * phi;
        }
    out.col_coords = Matrix(t.n_cols(), r);
    for (std::size_t jcat = 0; jcat < t.n_cols(); ++jcat)
        for (std::size_t k = 0; k < r; ++k) {
            double psi = 0.0;
            for (std::size_t l = 0; l < svd.v.rows(); ++l) psi += svd.v(l, k) * by.at(l + 1, jcat);
            out.col_coords(jcat, k) = svd.s[k] * psi;
        }
    return out;
}

ShapeMatchReport shape_match_report(const ContingencyTable& t, std::size_t r) {
    auto ca = correspondence_analysis(t, r, CorrespondenceVariant::CA);
    return {std::move(ca.row_coords), std::move(ca.col_coords)};
}

}  // namespace lpstat
