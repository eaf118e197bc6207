#pragma once

#include <memory>
#include <string>

#include "lpstat/discrete_dist.hpp"

namespace lpstat {

/// Baseline law G for comparison-density modeling: one of the supported
/// continuous families, Poisson, or an explicit discrete distribution.
/// Parameter fitting is by method of moments.
class Baseline {
public:
    enum class Kind { Normal, Exponential, Gamma, Poisson, Discrete };

    static Baseline normal(double mu, double sigma);
    static Baseline exponential(double mean);
    static Baseline gamma(double shape, double rate);
    static Baseline poisson(double lambda);
    static Baseline discrete(DiscreteDist d);

    /// Method-of-moments fit (normal: mean/sd; exponential: mean;
    /// gamma: mean-variance matching; poisson: mean).
    static Baseline fit(Kind kind, const Sample& s);
    static Kind kind_from_string(const std::string& s);

    Kind kind() const { return kind_; }
    bool is_discrete() const { return kind_ == Kind::Poisson || kind_ == Kind::Discrete; }
    const std::vector<double>& params() const { return params_; }
    std::string describe() const;

    double pdf(double x) const;       // density or mass
    double cdf(double x) const;
    double quantile(double u) const;  // 0 < u < 1
    bool in_support(double x) const;

    /// Discrete support as a DiscreteDist. Poisson is truncated at cumulative
    /// mass 1 - 1e-12, extended to cover `cover_up_to` when needed.
    const DiscreteDist& dist(double cover_up_to = 0.0) const;

private:
    Baseline(Kind kind, std::vector<double> params);

    Kind kind_;
    std::vector<double> params_;
    mutable std::shared_ptr<const DiscreteDist> dist_;  // lazily built for Poisson
};

}  // namespace lpstat
