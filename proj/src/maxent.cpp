#include "lpstat/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpstat/errors.hpp"

namespace lpstat {

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    for (std::size_t attempt = 0;; ++attempt) {
        Matrix m = a;
        std::vector<double> rhs = b;
        bool ok = true;
        for (std::size_t col = 0; col < n && ok; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
            if (std::abs(m(piv, col)) < 1e-300) {
                ok = false;
                break;
            }
            if (piv != col) {
                for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
                std::swap(rhs[piv], rhs[col]);
            }
            for (std::size_t r = col + 1; r < n; ++r) {
                const double f = m(r, col) / m(col, col);
                for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
                rhs[r] -= f * rhs[col];
            }
        }
        if (ok) {
            std::vector<double> x(n);
            for (std::size_t r = n; r-- > 0;) {
                double acc = rhs[r];
                for (std::size_t c = r + 1; c < n; ++c) acc -= m(r, c) * x[c];
                x[r] = acc / m(r, r);
            }
            bool finite = true;
            for (double v : x) finite = finite && std::isfinite(v);
            if (finite) return x;
        }
        if (attempt >= 3) throw NumericError("singular system in Newton step");
        for (std::size_t i = 0; i < n; ++i) a(i, i) += std::pow(10.0, attempt - 12.0);
    }
}

namespace {

struct Moments {
    double log_z;
    std::vector<double> mean;  // E_theta[F]
    Matrix cov;                // Cov_theta(F) (filled only when requested)
};

Moments tilt_moments(const std::vector<double>& w, const Matrix& f,
                     const std::vector<double>& theta, bool with_cov) {
    const std::size_t nf = f.rows(), nc = f.cols();
    std::vector<double> lin(nc, 0.0);
    for (std::size_t j = 0; j < nf; ++j) {
        const double t = theta[j];
        if (t == 0.0) continue;
        for (std::size_t i = 0; i < nc; ++i) lin[i] += t * f(j, i);
    }
    double shift = -1e300;
    for (double v : lin) shift = std::max(shift, v);
    std::vector<double> e(nc);
    double z = 0.0;
    for (std::size_t i = 0; i < nc; ++i) {
        e[i] = w[i] * std::exp(lin[i] - shift);
        z += e[i];
    }
    Moments m;
    m.log_z = std::log(z) + shift;
    m.mean.assign(nf, 0.0);
    for (std::size_t j = 0; j < nf; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < nc; ++i) acc += e[i] * f(j, i);
        m.mean[j] = acc / z;
    }
    if (with_cov) {
        m.cov = Matrix(nf, nf);
        for (std::size_t j = 0; j < nf; ++j)
            for (std::size_t l = j; l < nf; ++l) {
                double acc = 0.0;
                for (std::size_t i = 0; i < nc; ++i) acc += e[i] * f(j, i) * f(l, i);
                const double c = acc / z - m.mean[j] * m.mean[l];
                m.cov(j, l) = c;
                m.cov(l, j) = c;
            }
    }
    return m;
}

}  // namespace

MaxentResult solve_maxent(const std::vector<double>& weights, const Matrix& features,
                          const std::vector<double>& target, const MaxentOptions& opt) {
    const std::size_t nf = features.rows();
    if (target.size() != nf) throw DataError("target length does not match feature count");
    if (weights.size() != features.cols()) throw DataError("weight length does not match cells");

    auto dual = [&](const Moments& m, const std::vector<double>& th) {
        double dot = 0.0;
        for (std::size_t j = 0; j < nf; ++j) dot += th[j] * target[j];
        return m.log_z - dot;
    };

    std::vector<double> theta(nf, 0.0);
    Moments cur = tilt_moments(weights, features, theta, true);
    double obj = dual(cur, theta);
    double residual = 0.0;
    const double base_log_z = std::log([&] {
        double s = 0.0;
        for (double v : weights) s += v;
        return s;
    }());

    for (std::size_t it = 0; it < opt.max_iterations; ++it) {
        std::vector<double> grad(nf);
        residual = 0.0;
        for (std::size_t j = 0; j < nf; ++j) {
            grad[j] = cur.mean[j] - target[j];
            residual = std::max(residual, std::abs(grad[j]));
        }
        if (residual < opt.tol) {
            MaxentResult r;
            r.theta = theta;
            r.log_normalizer = cur.log_z - base_log_z;
            r.iterations = it;
            r.residual = residual;
            return r;
        }
        std::vector<double> step = solve_linear(cur.cov, grad);
        double alpha = 1.0;
        for (int half = 0; half < 60; ++half) {
            std::vector<double> trial(nf);
            for (std::size_t j = 0; j < nf; ++j) trial[j] = theta[j] - alpha * step[j];
            Moments next = tilt_moments(weights, features, trial, true);
            const double next_obj = dual(next, trial);
            if (std::isfinite(next_obj) && next_obj <= obj + 1e-15) {
                theta = std::move(trial);
                cur = std::move(next);
                obj = next_obj;
                break;
            }
            alpha *= 0.5;
            if (half == 59)
                throw NumericError("maxent line search failed; residual " +
                                   std::to_string(residual));
        }
    }
    throw NumericError("maxent fit did not converge in " + std::to_string(opt.max_iterations) +
                       " iterations; residual " + std::to_string(residual));
}

}  // namespace lpstat
