#pragma once

#include <functional>
#include <vector>

namespace lpstat {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    double integrate(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a = 0.0, double b = 1.0);

/// Composite Gauss-Legendre on [0,1] with panels dyadically graded toward
/// both endpoints (handles integrable endpoint singularities of quantile
/// functions). `panels` panels of `order` points each.
QuadratureRule graded_gauss_legendre(std::size_t panels = 32, std::size_t order = 8);

/// Composite Gauss on uniform panels over [0,1] (for clipped, kinked
/// integrands such as truncated comparison densities).
QuadratureRule uniform_composite_gauss(std::size_t panels = 512, std::size_t order = 4);

}  // namespace lpstat
