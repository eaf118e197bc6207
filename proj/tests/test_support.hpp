#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "lpstat/discrete_dist.hpp"
#include "lpstat/matrix.hpp"

namespace lpstat::test {

using BigRational = boost::rational<boost::multiprecision::cpp_int>;

/// Independent oracle for the score construction: Gram-Schmidt on powers of
/// W = Fmid - 1/2 in exact rational arithmetic (unnormalized; scaling by the
/// positive constant 1/sd(Fmid)^j does not change the orthogonal directions).
/// Returns the orthogonal directions as doubles, normalized and sign-fixed
/// like the production convention.
inline Matrix rational_gram_schmidt(const std::vector<BigRational>& masses, std::size_t m) {
    const std::size_t k = masses.size();
    std::vector<BigRational> cum(k), mid(k);
    BigRational run(0);
    for (std::size_t i = 0; i < k; ++i) {
        run += masses[i];
        cum[i] = run;
        mid[i] = run - masses[i] / 2;
    }
    std::vector<std::vector<BigRational>> basis;  // orthogonal, unnormalized
    basis.emplace_back(k, BigRational(1));
    std::vector<BigRational> w(k);
    for (std::size_t i = 0; i < k; ++i) w[i] = mid[i] - BigRational(1, 2);

    auto dot = [&](const std::vector<BigRational>& a, const std::vector<BigRational>& b) {
        BigRational acc(0);
        for (std::size_t i = 0; i < k; ++i) acc += masses[i] * a[i] * b[i];
        return acc;
    };

    std::vector<BigRational> power(k, BigRational(1));
    for (std::size_t j = 1; j <= m; ++j) {
        for (std::size_t i = 0; i < k; ++i) power[i] *= w[i];
        std::vector<BigRational> v = power;
        for (const auto& b : basis) {
            const BigRational c = dot(v, b) / dot(b, b);
            for (std::size_t i = 0; i < k; ++i) v[i] -= c * b[i];
        }
        basis.push_back(std::move(v));
    }

    Matrix out(m, k);
    for (std::size_t j = 1; j <= m; ++j) {
        std::vector<double> row(k);
        double nrm = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            row[i] = boost::rational_cast<double>(basis[j][i]);
            nrm += boost::rational_cast<double>(masses[i]) * row[i] * row[i];
        }
        nrm = std::sqrt(nrm);
        double sign = 1.0;
        for (std::size_t i = k; i-- > 0;)
            if (row[i] != 0.0) {
                sign = row[i] > 0.0 ? 1.0 : -1.0;
                break;
            }
        for (std::size_t i = 0; i < k; ++i) out(j - 1, i) = sign * row[i] / nrm;
    }
    return out;
}

/// Random simplex masses (positive, sum 1) on k atoms.
inline std::vector<double> random_masses(std::mt19937_64& gen, std::size_t k, double floor = 0.01) {
    std::uniform_real_distribution<double> unif(floor, 1.0);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& v : w) {
        v = unif(gen);
        total += v;
    }
    for (auto& v : w) v /= total;
    return w;
}

inline DiscreteDist random_dist(std::mt19937_64& gen, std::size_t k) {
    std::vector<double> atoms(k);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    for (auto& a : atoms) a = unif(gen);
    std::sort(atoms.begin(), atoms.end());
    for (std::size_t i = 1; i < k; ++i)
        if (atoms[i] <= atoms[i - 1]) atoms[i] = atoms[i - 1] + 1e-3;
    return DiscreteDist::from_masses(atoms, random_masses(gen, k));
}

/// Random joint probability table with strictly positive cells.
inline Matrix random_joint(std::mt19937_64& gen, std::size_t rows, std::size_t cols,
                           double floor = 0.02) {
    std::uniform_real_distribution<double> unif(floor, 1.0);
    Matrix p(rows, cols);
    double total = 0.0;
    for (auto& v : p.data()) {
        v = unif(gen);
        total += v;
    }
    for (auto& v : p.data()) v /= total;
    return p;
}

}  // namespace lpstat::test
