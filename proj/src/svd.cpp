#include "lpstat/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lpstat {

namespace {

// One-sided Jacobi on a tall matrix (rows >= cols): orthogonalizes column
// pairs; columns converge to s_k u_k while V accumulates the rotations.
SvdResult jacobi_tall(Matrix a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    Matrix v(cols, cols);
    for (std::size_t i = 0; i < cols; ++i) v(i, i) = 1.0;

    double scale = 0.0;
    for (double x : a.data()) scale = std::max(scale, std::abs(x));
    const double tol = (scale > 0 ? scale : 1.0) * 1e-15;

    for (std::size_t sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < rows; ++i) {
                    app += a(i, p) * a(i, p);
                    aqq += a(i, q) * a(i, q);
                    apq += a(i, p) * a(i, q);
                }
                if (std::abs(apq) <= tol * tol) continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < rows; ++i) {
                    const double ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap - s * aq;
                    a(i, q) = s * ap + c * aq;
                }
                for (std::size_t i = 0; i < cols; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> s(cols);
    Matrix u(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double nrm = 0.0;
        for (std::size_t i = 0; i < rows; ++i) nrm += a(i, j) * a(i, j);
        s[j] = std::sqrt(nrm);
        if (s[j] > 0.0)
            for (std::size_t i = 0; i < rows; ++i) u(i, j) = a(i, j) / s[j];
    }

    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return s[x] > s[y]; });
    SvdResult out;
    out.s.resize(cols);
    out.u = Matrix(rows, cols);
    out.v = Matrix(cols, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        out.s[j] = s[order[j]];
        for (std::size_t i = 0; i < rows; ++i) out.u(i, j) = u(i, order[j]);
        for (std::size_t i = 0; i < cols; ++i) out.v(i, j) = v(i, order[j]);
    }
    return out;
}

}  // namespace

SvdResult jacobi_svd(const Matrix& a) {
    if (a.rows() >= a.cols()) return jacobi_tall(a);
    SvdResult t = jacobi_tall(a.transposed());
    return {std::move(t.v), std::move(t.s), std::move(t.u)};
}

}  // namespace lpstat
