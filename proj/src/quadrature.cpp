#include "lpstat/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace lpstat {

namespace {

// Nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre_reference(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (std::size_t k = 1; k < n; ++k) {
                const double p2 = ((2.0 * k + 1.0) * z * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            pp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

void append_panel(QuadratureRule& rule, const std::vector<double>& x,
                  const std::vector<double>& w, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < x.size(); ++i) {
        rule.nodes.push_back(mid + half * x[i]);
        rule.weights.push_back(half * w[i]);
    }
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
    std::vector<double> x, w;
    gauss_legendre_reference(n, x, w);
    QuadratureRule rule;
    append_panel(rule, x, w, a, b);
    return rule;
}

QuadratureRule graded_gauss_legendre(std::size_t panels, std::size_t order) {
    std::vector<double> x, w;
    gauss_legendre_reference(order, x, w);
    const std::size_t half = panels / 2;
    std::vector<double> brk{0.0};
    for (std::size_t i = 0; i + 1 < half; ++i)
        brk.push_back(0.5 * std::pow(2.0, -static_cast<double>(half - 1 - i)));
    brk.push_back(0.5);
    QuadratureRule rule;
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) append_panel(rule, x, w, brk[i], brk[i + 1]);
    for (std::size_t i = brk.size() - 1; i-- > 0;)
        append_panel(rule, x, w, 1.0 - brk[i + 1], 1.0 - brk[i]);
    return rule;
}

QuadratureRule uniform_composite_gauss(std::size_t panels, std::size_t order) {
    std::vector<double> x, w;
    gauss_legendre_reference(order, x, w);
    QuadratureRule rule;
    for (std::size_t i = 0; i < panels; ++i)
        append_panel(rule, x, w, static_cast<double>(i) / panels,
                     static_cast<double>(i + 1) / panels);
    return rule;
}

}  // namespace lpstat
