#include "lpstat/legendre.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "lpstat/errors.hpp"

namespace lpstat {

double legendre(unsigned j, double u) {
    const double x = 2.0 * u - 1.0;
    double pm1 = 1.0;  // P_0
    if (j == 0) return 1.0;
    double p = x;  // P_1
    for (unsigned k = 1; k < j; ++k) {
        const double next = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
        pm1 = p;
        p = next;
    }
    return std::sqrt(2.0 * j + 1.0) * p;
}

LegendreBasis::LegendreBasis(unsigned max_degree) {
    if (max_degree > 16) throw DataError("exact Legendre coefficients supported up to degree 16");
    auto binom = [](unsigned n, unsigned k) {
        // exact for the ranges used here
        long double r = 1.0L;
        for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return static_cast<std::int64_t>(r + 0.5L);
    };
    coeffs_.resize(max_degree + 1);
    for (unsigned j = 0; j <= max_degree; ++j) {
        coeffs_[j].resize(j + 1);
        for (unsigned l = 0; l <= j; ++l) {
            const std::int64_t mag = binom(j, l) * binom(j + l, l);
            coeffs_[j][l] = ((j + l) % 2 == 0) ? mag : -mag;
        }
    }
}

double LegendreBasis::eval(unsigned j, double u) const {
    const auto& c = coeffs_.at(j);
    double acc = 0.0;
    for (std::size_t l = c.size(); l-- > 0;) acc = acc * u + static_cast<double>(c[l]);
    return std::sqrt(2.0 * j + 1.0) * acc;
}

double LegendreBasis::orthonormality_defect() const {
    using BigInt = boost::multiprecision::cpp_int;
    double worst = 0.0;
    for (unsigned j = 0; j < coeffs_.size(); ++j) {
        for (unsigned l = j; l < coeffs_.size(); ++l) {
            // exact rational sum of c_ja c_lb / (a+b+1)
            BigInt num = 0, den = 1;
            for (std::size_t a = 0; a < coeffs_[j].size(); ++a)
                for (std::size_t b = 0; b < coeffs_[l].size(); ++b) {
                    const BigInt d = static_cast<long long>(a + b + 1);
                    const BigInt n = BigInt(coeffs_[j][a]) * coeffs_[l][b];
                    num = num * d + n * den;
                    den *= d;
                }
            // off-diagonal sums vanish exactly; diagonal equals 1/(2j+1)
            if (j == l) num = num * (2 * static_cast<long long>(j) + 1) - den;
            worst = std::max(worst,
                             std::abs(num.convert_to<double>() / den.convert_to<double>()));
        }
    }
    return worst;
}

}  // namespace lpstat
