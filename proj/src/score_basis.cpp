#include "lpstat/score_basis.hpp"

#include <cmath>

#include "lpstat/errors.hpp"

namespace lpstat {

namespace {
constexpr double kDependenceTol = 1e-9;

double weighted_dot(const std::vector<double>& w, const std::vector<double>& a,
                    const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * b[i];
    return s;
}
}  // namespace

ScoreBasis build_scores(std::shared_ptr<const DiscreteDist> d, std::size_t m) {
    const std::size_t k = d->size();
    if (k < 2) throw DataError("degenerate distribution: score basis needs at least two atoms");
    if (m < 1) throw DataError("requested basis order must be at least 1");
    const bool clipped = m > k - 1;
    if (clipped) m = k - 1;

    const auto& p = d->masses();
    const double sd_mid = std::sqrt(midvar(*d));
    std::vector<double> t1(k);
    for (std::size_t i = 0; i < k; ++i) t1[i] = (d->mid()[i] - 0.5) / sd_mid;

    std::vector<std::vector<double>> rows;
    rows.emplace_back(k, 1.0);  // T_0
    rows.push_back(t1);

    bool truncated = false;
    for (std::size_t j = 2; j <= m; ++j) {
        // next power direction in recurrence form: T_1 * T_{j-1} spans the
        // same nested spaces as T_1^j but stays numerically independent far
        // longer (raw powers overflow their useful precision near k = 20)
        std::vector<double> v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = t1[i] * rows.back()[i];
        const double pn = std::sqrt(weighted_dot(p, v, v));
        if (pn <= 0.0) {
            truncated = true;
            break;
        }
        for (std::size_t i = 0; i < k; ++i) v[i] /= pn;

        // first projection pass carries the dependence test
        for (const auto& r : rows) {
            const double c = weighted_dot(p, v, r);
            for (std::size_t i = 0; i < k; ++i) v[i] -= c * r[i];
        }
        double nrm = std::sqrt(weighted_dot(p, v, v));
        if (nrm < kDependenceTol) {
            truncated = true;
            break;
        }
        for (std::size_t i = 0; i < k; ++i) v[i] /= nrm;
        // reorthogonalize until the projections stop moving; the powers of
        // T_1 are nearly collinear, so one fixed pass is not always enough
        for (int pass = 0; pass < 4; ++pass) {
            double drift = 0.0;
            for (const auto& r : rows) {
                const double c = weighted_dot(p, v, r);
                drift = std::max(drift, std::abs(c));
                for (std::size_t i = 0; i < k; ++i) v[i] -= c * r[i];
            }
            nrm = std::sqrt(weighted_dot(p, v, v));
            if (nrm <= 0.0) break;
            for (std::size_t i = 0; i < k; ++i) v[i] /= nrm;
            if (drift < 1e-13) break;
        }
        rows.push_back(std::move(v));
    }

    Matrix table(rows.size() - 1, k);
    for (std::size_t j = 1; j < rows.size(); ++j) {
        // sign: value at the largest atom (first nonzero from the top) positive
        double sign = 1.0;
        for (std::size_t i = k; i-- > 0;) {
            if (rows[j][i] != 0.0) {
                sign = rows[j][i] > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (std::size_t i = 0; i < k; ++i) table(j - 1, i) = sign * rows[j][i];
    }
    return ScoreBasis(std::move(d), std::move(table), clipped, truncated);
}

ScoreBasis build_scores(const DiscreteDist& d, std::size_t m) {
    return build_scores(std::make_shared<const DiscreteDist>(d), m);
}

double ScoreBasis::at_value(std::size_t j, double x) const {
    const double u = midcdf(*dist_, x);
    if (u <= 0.0) return at(j, 0);
    if (u >= 1.0) return at(j, n_atoms() - 1);
    return at(j, dist_->quantile_cell(u));
}

double unit_score(const ScoreBasis& b, std::size_t j, double u) {
    if (j < 1 || j > b.m()) throw DataError("score index out of range");
    if (!(u > 0.0 && u < 1.0)) throw DataError("unit score argument must lie in (0,1)");
    return b.at(j, b.dist().right_cell(u));
}

}  // namespace lpstat
