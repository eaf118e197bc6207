#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpstat/comoments.hpp"

namespace lpstat {

enum class Pattern { Linear, Quadratic, Lissajous, WShaped, Sine, Circle };
enum class NoiseKind { E1Gaussian, E2Contaminated, E3Leverage, E4Cauchy };

Pattern pattern_from_string(const std::string& s);
NoiseKind noise_from_string(const std::string& s);
std::string to_string(Pattern p);
std::string to_string(NoiseKind k);

/// One simulation cell: a functional pattern plus a noise regime at a given
/// level. Levels follow the sweep ranges sigma in [0,3] (E1), eta in [0,0.4]
/// (E2/E3), Cauchy scale in [0,2] (E4).
struct Scenario {
    Pattern pattern = Pattern::Linear;
    NoiseKind noise = NoiseKind::E1Gaussian;
    double level = 1.0;
    std::size_t n = 300;
    std::uint64_t seed = 1;
};

/// Draw one paired sample. X is uniform on the pattern's natural domain;
/// noise is added to Y, except for the circle and Lissajous patterns where
/// both coordinates are perturbed componentwise.
PairedSample generate_scenario(const Scenario& sc);

enum class DependenceMethod { Lpinfor, Pearson, Spearman };
std::string to_string(DependenceMethod m);

/// Test statistics used by the power study. LPINFOR is the raw m=4
/// statistic; Pearson/Spearman are absolute correlations.
double dependence_statistic(DependenceMethod method, const PairedSample& s, std::size_t m = 4);

struct PowerCell {
    Pattern pattern;
    NoiseKind noise;
    double level = 0.0;
    DependenceMethod method;
    double cutoff = 0.0;     // null 95th percentile
    double power = 0.0;      // alternative rejection rate
    double null_rate = 0.0;  // fresh-null rejection rate (calibration)
    std::size_t rejections = 0;
    std::size_t b0 = 0, b1 = 0, n = 0;
    std::uint64_t seed = 0;
    std::vector<uint8_t> rejected;  // per alternative replicate, for paired tests
};

struct PowerStudyConfig {
    std::vector<Scenario> scenarios;
    std::vector<DependenceMethod> methods = {DependenceMethod::Lpinfor,
                                             DependenceMethod::Pearson,
                                             DependenceMethod::Spearman};
    std::size_t b0 = 250;  // null replicates for the cutoff
    std::size_t b1 = 200;  // alternative replicates
    std::size_t m = 4;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
};

/// Null-calibrated power per scenario and method. Null data are produced by
/// re-pairing the generated sample uniformly at random (margins preserved).
/// Deterministic given (seed, config) regardless of worker count.
std::vector<PowerCell> power_study(const PowerStudyConfig& cfg);

struct TailStudyConfig {
    std::vector<double> pis{0.01, 0.02, 0.05, 0.09};
    std::vector<double> mus{0.0, 1.0, 2.0, 3.0};
    std::size_t n = 1000;
    std::size_t replicates = 200;
    std::size_t m = 4;
    std::uint64_t seed = 1;
};

struct TailPowerRow {
    double pi = 0.0, mu = 0.0, power = 0.0, cutoff = 0.0;
};

/// Goodness-of-fit power against the contaminated-normal alternative
/// (1-pi) N(0,1) + pi N(mu,1), tested with the raw m-component statistic
/// against the standard normal baseline.
std::vector<TailPowerRow> tail_alternative_study(const TailStudyConfig& cfg);

struct TimingRow {
    std::size_t n = 0;
    double mean_seconds = 0.0;
    double sd_seconds = 0.0;
    double median_seconds = 0.0;
    double ratio_to_previous = 0.0;
    double statistic = 0.0;  // determinism check
};

/// Wall-clock timing of the LPINFOR statistic on independent uniform pairs.
std::vector<TimingRow> timing_bench(const std::vector<std::size_t>& sizes, std::size_t repeats,
                                    std::uint64_t seed = 1, std::size_t m = 4);

}  // namespace lpstat
