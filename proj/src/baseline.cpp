#include "lpstat/baseline.hpp"

#include <boost/math/distributions/exponential.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <cmath>

#include "lpstat/errors.hpp"

namespace lpstat {

namespace {
double sample_mean(const Sample& s) {
    double acc = 0.0;
    for (double v : s.values) acc += v;
    return acc / static_cast<double>(s.n());
}

double sample_var(const Sample& s, double mean) {
    if (s.n() < 2) throw DataError("need at least two observations to fit");
    double acc = 0.0;
    for (double v : s.values) acc += (v - mean) * (v - mean);
    return acc / static_cast<double>(s.n() - 1);
}
}  // namespace

Baseline::Baseline(Kind kind, std::vector<double> params)
    : kind_(kind), params_(std::move(params)) {}

Baseline Baseline::normal(double mu, double sigma) {
    if (!(sigma > 0.0)) throw DataError("normal baseline needs sigma > 0");
    return Baseline(Kind::Normal, {mu, sigma});
}

Baseline Baseline::exponential(double mean) {
    if (!(mean > 0.0)) throw DataError("exponential baseline needs mean > 0");
    return Baseline(Kind::Exponential, {mean});
}

Baseline Baseline::gamma(double shape, double rate) {
    if (!(shape > 0.0 && rate > 0.0)) throw DataError("gamma baseline needs shape, rate > 0");
    return Baseline(Kind::Gamma, {shape, rate});
}

Baseline Baseline::poisson(double lambda) {
    if (!(lambda > 0.0)) throw DataError("poisson baseline needs lambda > 0");
    return Baseline(Kind::Poisson, {lambda});
}

Baseline Baseline::discrete(DiscreteDist d) {
    Baseline b(Kind::Discrete, {});
    b.dist_ = std::make_shared<const DiscreteDist>(std::move(d));
    return b;
}

Baseline Baseline::fit(Kind kind, const Sample& s) {
    if (s.n() == 0) throw DataError("empty input");
    const double mean = sample_mean(s);
    switch (kind) {
        case Kind::Normal:
            return normal(mean, std::sqrt(sample_var(s, mean)));
        case Kind::Exponential:
            return exponential(mean);
        case Kind::Gamma: {
            const double var = sample_var(s, mean);
            if (!(var > 0.0)) throw DataError("constant sample");
            return gamma(mean * mean / var, mean / var);
        }
        case Kind::Poisson:
            return poisson(mean);
        case Kind::Discrete:
            return discrete(empirical_dist(s));
    }
    throw DataError("unknown baseline kind");
}

Baseline::Kind Baseline::kind_from_string(const std::string& s) {
    if (s == "normal") return Kind::Normal;
    if (s == "exponential") return Kind::Exponential;
    if (s == "gamma") return Kind::Gamma;
    if (s == "poisson") return Kind::Poisson;
    if (s == "discrete") return Kind::Discrete;
    throw DataError("unknown baseline kind: " + s);
}

std::string Baseline::describe() const {
    switch (kind_) {
        case Kind::Normal:
            return "normal(mu=" + std::to_string(params_[0]) + ", sigma=" + std::to_string(params_[1]) + ")";
        case Kind::Exponential:
            return "exponential(mean=" + std::to_string(params_[0]) + ")";
        case Kind::Gamma:
            return "gamma(shape=" + std::to_string(params_[0]) + ", rate=" + std::to_string(params_[1]) + ")";
        case Kind::Poisson:
            return "poisson(lambda=" + std::to_string(params_[0]) + ")";
        case Kind::Discrete:
            return "discrete(" + std::to_string(dist_->size()) + " atoms)";
    }
    return "?";
}

double Baseline::pdf(double x) const {
    switch (kind_) {
        case Kind::Normal:
            return boost::math::pdf(boost::math::normal_distribution<double>(params_[0], params_[1]), x);
        case Kind::Exponential:
            return x < 0.0 ? 0.0
                           : boost::math::pdf(boost::math::exponential_distribution<double>(1.0 / params_[0]), x);
        case Kind::Gamma:
            return x < 0.0 ? 0.0
                           : boost::math::pdf(
                                 boost::math::gamma_distribution<double>(params_[0], 1.0 / params_[1]), x);
        case Kind::Poisson: {
            if (x < 0.0 || x != std::floor(x)) return 0.0;
            return boost::math::pdf(boost::math::poisson_distribution<double>(params_[0]), x);
        }
        case Kind::Discrete: {
            auto idx = dist_->atom_index(x);
            return idx ? dist_->masses()[*idx] : 0.0;
        }
    }
    return 0.0;
}

double Baseline::cdf(double x) const {
    switch (kind_) {
        case Kind::Normal:
            return boost::math::cdf(boost::math::normal_distribution<double>(params_[0], params_[1]), x);
        case Kind::Exponential:
            return x < 0.0 ? 0.0
                           : boost::math::cdf(boost::math::exponential_distribution<double>(1.0 / params_[0]), x);
        case Kind::Gamma:
            return x < 0.0 ? 0.0
                           : boost::math::cdf(
                                 boost::math::gamma_distribution<double>(params_[0], 1.0 / params_[1]), x);
        case Kind::Poisson:
            return x < 0.0 ? 0.0
                           : boost::math::cdf(boost::math::poisson_distribution<double>(params_[0]),
                                              std::floor(x));
        case Kind::Discrete: {
            double acc = 0.0;
            for (std::size_t i = 0; i < dist_->size() && dist_->atoms()[i] <= x; ++i)
                acc = dist_->cumulative()[i];
            return acc;
        }
    }
    return 0.0;
}

double Baseline::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw DataError("quantile level must lie in (0,1)");
    switch (kind_) {
        case Kind::Normal:
            return boost::math::quantile(boost::math::normal_distribution<double>(params_[0], params_[1]), u);
        case Kind::Exponential:
            return boost::math::quantile(boost::math::exponential_distribution<double>(1.0 / params_[0]), u);
        case Kind::Gamma:
            return boost::math::quantile(
                boost::math::gamma_distribution<double>(params_[0], 1.0 / params_[1]), u);
        case Kind::Poisson:
        case Kind::Discrete:
            return lpstat::quantile(dist(), u);
    }
    throw DataError("unknown baseline kind");
}

bool Baseline::in_support(double x) const {
    switch (kind_) {
        case Kind::Normal:
            return std::isfinite(x);
        case Kind::Exponential:
        case Kind::Gamma:
            return x >= 0.0;
        case Kind::Poisson:
            return x >= 0.0 && x == std::floor(x);
        case Kind::Discrete:
            return dist_->atom_index(x).has_value();
    }
    return false;
}

const DiscreteDist& Baseline::dist(double cover_up_to) const {
    if (kind_ == Kind::Discrete) return *dist_;
    if (kind_ != Kind::Poisson) throw DataError("continuous baseline has no discrete support");
    if (!dist_ || (!dist_->atoms().empty() && dist_->atoms().back() < cover_up_to)) {
        boost::math::poisson_distribution<double> pd(params_[0]);
        std::vector<double> atoms, masses;
        double x = 0.0, cum = 0.0;
        while (cum < 1.0 - 1e-12 || x <= cover_up_to) {
            const double p = boost::math::pdf(pd, x);
            atoms.push_back(x);
            masses.push_back(p);
            cum += p;
            x += 1.0;
            if (x > 1e6) throw NumericError("poisson truncation failed to converge");
        }
        dist_ = std::make_shared<const DiscreteDist>(
            DiscreteDist::from_masses(std::move(atoms), std::move(masses)));
    }
    return *dist_;
}

}  // namespace lpstat
