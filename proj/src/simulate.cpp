#include "lpstat/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <thread>

#include "lpstat/comparison_density.hpp"
#include "lpstat/errors.hpp"
#include "lpstat/lpinfor.hpp"
#include "lpstat/rng.hpp"

namespace lpstat {

Pattern pattern_from_string(const std::string& s) {
    if (s == "linear") return Pattern::Linear;
    if (s == "quadratic") return Pattern::Quadratic;
    if (s == "lissajous") return Pattern::Lissajous;
    if (s == "w_shaped" || s == "w") return Pattern::WShaped;
    if (s == "sine") return Pattern::Sine;
    if (s == "circle") return Pattern::Circle;
    throw DataError("unknown pattern: " + s);
}

NoiseKind noise_from_string(const std::string& s) {
    if (s == "e1") return NoiseKind::E1Gaussian;
    if (s == "e2") return NoiseKind::E2Contaminated;
    if (s == "e3") return NoiseKind::E3Leverage;
    if (s == "e4") return NoiseKind::E4Cauchy;
    throw DataError("unknown noise kind: " + s);
}

std::string to_string(Pattern p) {
    switch (p) {
        case Pattern::Linear: return "linear";
        case Pattern::Quadratic: return "quadratic";
        case Pattern::Lissajous: return "lissajous";
        case Pattern::WShaped: return "w_shaped";
        case Pattern::Sine: return "sine";
        case Pattern::Circle: return "circle";
    }
    return "?";
}

std::string to_string(NoiseKind k) {
    switch (k) {
        case NoiseKind::E1Gaussian: return "e1";
        case NoiseKind::E2Contaminated: return "e2";
        case NoiseKind::E3Leverage: return "e3";
        case NoiseKind::E4Cauchy: return "e4";
    }
    return "?";
}

std::string to_string(DependenceMethod m) {
    switch (m) {
        case DependenceMethod::Lpinfor: return "lpinfor";
        case DependenceMethod::Pearson: return "pearson";
        case DependenceMethod::Spearman: return "spearman";
    }
    return "?";
}

namespace {

double draw_noise(NoiseKind kind, double level, Rng& rng) {
    switch (kind) {
        case NoiseKind::E1Gaussian:
            return level > 0.0 ? rng.normal(0.0, level) : 0.0;
        case NoiseKind::E2Contaminated:
            return rng.uniform() < level ? rng.normal(1.0, 3.0) : rng.normal();
        case NoiseKind::E3Leverage: {
            if (rng.uniform() < level) {
                const double mus[4] = {-40.0, -20.0, 20.0, 40.0};
                return rng.normal(mus[rng.integer(4)], 1.0);
            }
            return rng.normal();
        }
        case NoiseKind::E4Cauchy:
            return level > 0.0 ? rng.cauchy(level) : 0.0;
    }
    return 0.0;
}

}  // namespace

PairedSample generate_scenario(const Scenario& sc) {
    Rng rng(sc.seed);
    PairedSample s;
    s.x.resize(sc.n);
    s.y.resize(sc.n);
    for (std::size_t i = 0; i < sc.n; ++i) {
        double x = 0.0, y = 0.0;
        switch (sc.pattern) {
            case Pattern::Linear:
                x = rng.uniform(-1.0, 1.0);
                y = x + draw_noise(sc.noise, sc.level, rng);
                break;
            case Pattern::Quadratic:
                x = rng.uniform(-1.0, 1.0);
                y = x * x + draw_noise(sc.noise, sc.level, rng);
                break;
            case Pattern::Sine:
                x = rng.uniform(0.0, 1.0);
                y = std::sin(4.0 * std::numbers::pi * x) + draw_noise(sc.noise, sc.level, rng);
                break;
            case Pattern::WShaped: {
                x = rng.uniform(-1.0, 1.0);
                const double t = x - 0.5 * std::floor(x / 0.5);
                y = 4.0 * std::abs(t - 0.25) + draw_noise(sc.noise, sc.level, rng);
                break;
            }
            case Pattern::Circle: {
                // one draw perturbs the radius: the angular structure is the
                // signal, the noise regime scales it
                const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
                const double r = 1.0 + draw_noise(sc.noise, sc.level, rng);
                x = r * std::cos(th);
                y = r * std::sin(th);
                break;
            }
            case Pattern::Lissajous: {
                const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
                x = std::sin(3.0 * t + std::numbers::pi / 2.0) +
                    draw_noise(sc.noise, sc.level, rng);
                y = std::sin(2.0 * t) + draw_noise(sc.noise, sc.level, rng);
                break;
            }
        }
        s.x[i] = x;
        s.y[i] = y;
    }
    return s;
}

double dependence_statistic(DependenceMethod method, const PairedSample& s, std::size_t m) {
    switch (method) {
        case DependenceMethod::Lpinfor: {
            auto cm = lp_comoments(s, m, {SelectionRule::All});
            return cm.sum_squares();
        }
        case DependenceMethod::Pearson: {
            const std::size_t n = s.n();
            double mx = 0.0, my = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                mx += s.x[i];
                my += s.y[i];
            }
            mx /= static_cast<double>(n);
            my /= static_cast<double>(n);
            double sxy = 0.0, sxx = 0.0, syy = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sxy += (s.x[i] - mx) * (s.y[i] - my);
                sxx += (s.x[i] - mx) * (s.x[i] - mx);
                syy += (s.y[i] - my) * (s.y[i] - my);
            }
            if (sxx == 0.0 || syy == 0.0) return 0.0;
            return std::abs(sxy / std::sqrt(sxx * syy));
        }
        case DependenceMethod::Spearman: {
            // classical midrank Spearman (independent of the LP path)
            auto rank = [](const std::vector<double>& v) {
                const std::size_t n = v.size();
                std::vector<std::size_t> order(n);
                for (std::size_t i = 0; i < n; ++i) order[i] = i;
                std::sort(order.begin(), order.end(),
                          [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
                std::vector<double> r(n);
                std::size_t i = 0;
                while (i < n) {
                    std::size_t j = i;
                    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
                    const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
                    for (std::size_t t = i; t <= j; ++t) r[order[t]] = mid;
                    i = j + 1;
                }
                return r;
            };
            PairedSample ranks{rank(s.x), rank(s.y)};
            return dependence_statistic(DependenceMethod::Pearson, ranks, m);
        }
    }
    return 0.0;
}

std::vector<PowerCell> power_study(const PowerStudyConfig& cfg) {
    std::vector<PowerCell> out;
    const std::size_t n_methods = cfg.methods.size();

    std::uint64_t scenario_counter = 0;
    for (const auto& sc : cfg.scenarios) {
        const std::uint64_t base = cfg.seed ^ (0x51ed270b0a1f1299ULL * ++scenario_counter);
        const std::size_t total = cfg.b0 + 2 * cfg.b1;

        // statistic matrix: replicate x method
        std::vector<std::vector<double>> stats(total, std::vector<double>(n_methods, 0.0));
        auto run_block = [&](std::size_t begin, std::size_t end) {
            for (std::size_t r = begin; r < end; ++r) {
                Scenario rep = sc;
                Rng stream = Rng::substream(base, r);
                // fresh scenario seed per replicate
                rep.seed = static_cast<std::uint64_t>(stream.integer(~0ULL - 1)) + 1;
                PairedSample data = generate_scenario(rep);
                const bool is_null = r < cfg.b0 || r >= cfg.b0 + cfg.b1;
                if (is_null) {
                    // independence null with the same margins: re-pair Y
                    stream.shuffle(data.y);
                }
                for (std::size_t mi = 0; mi < n_methods; ++mi)
                    stats[r][mi] = dependence_statistic(cfg.methods[mi], data, cfg.m);
            }
        };
        const std::size_t threads = std::max<std::size_t>(1, cfg.threads);
        if (threads == 1) {
            run_block(0, total);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (total + threads - 1) / threads;
            for (std::size_t t = 0; t < threads; ++t) {
                const std::size_t b = t * chunk;
                const std::size_t e = std::min(total, b + chunk);
                if (b < e) pool.emplace_back(run_block, b, e);
            }
            for (auto& th : pool) th.join();
        }

        for (std::size_t mi = 0; mi < n_methods; ++mi) {
            PowerCell cell;
            cell.pattern = sc.pattern;
            cell.noise = sc.noise;
            cell.level = sc.level;
            cell.method = cfg.methods[mi];
            cell.b0 = cfg.b0;
            cell.b1 = cfg.b1;
            cell.n = sc.n;
            cell.seed = cfg.seed;

            std::vector<double> null_stats(cfg.b0);
            for (std::size_t r = 0; r < cfg.b0; ++r) null_stats[r] = stats[r][mi];
            std::sort(null_stats.begin(), null_stats.end());
            const std::size_t idx = static_cast<std::size_t>(
                std::ceil(0.95 * static_cast<double>(cfg.b0))) - 1;
            cell.cutoff = null_stats[std::min(idx, cfg.b0 - 1)];

            cell.rejected.resize(cfg.b1);
            std::size_t rej = 0;
            for (std::size_t r = 0; r < cfg.b1; ++r) {
                const bool reject = stats[cfg.b0 + r][mi] > cell.cutoff;
                cell.rejected[r] = reject ? 1 : 0;
                rej += reject ? 1 : 0;
            }
            cell.rejections = rej;
            cell.power = static_cast<double>(rej) / static_cast<double>(cfg.b1);

            std::size_t null_rej = 0;
            for (std::size_t r = 0; r < cfg.b1; ++r)
                if (stats[cfg.b0 + cfg.b1 + r][mi] > cell.cutoff) ++null_rej;
            cell.null_rate = static_cast<double>(null_rej) / static_cast<double>(cfg.b1);
            out.push_back(std::move(cell));
        }
    }
    return out;
}

std::vector<TailPowerRow> tail_alternative_study(const TailStudyConfig& cfg) {
    auto baseline = Baseline::normal(0.0, 1.0);
    auto statistic = [&](const Sample& s) {
        auto coeffs = gof_components(s, baseline, cfg.m);
        double acc = 0.0;
        for (double c : coeffs) acc += c * c;
        return static_cast<double>(s.n()) * acc;
    };

    // one shared null reference distribution of the statistic
    std::vector<double> null_stats(cfg.replicates);
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
        Rng rng = Rng::substream(cfg.seed, r);
        Sample s;
        s.values.resize(cfg.n);
        for (auto& v : s.values) v = rng.normal();
        null_stats[r] = statistic(s);
    }
    std::sort(null_stats.begin(), null_stats.end());
    const std::size_t idx =
        static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(cfg.replicates))) - 1;
    const double cutoff = null_stats[std::min(idx, cfg.replicates - 1)];

    std::vector<TailPowerRow> out;
    std::uint64_t cell_counter = 1;
    for (double pi : cfg.pis) {
        for (double mu : cfg.mus) {
            std::size_t rej = 0;
            for (std::size_t r = 0; r < cfg.replicates; ++r) {
                Rng rng = Rng::substream(cfg.seed ^ (0xa3c59ac2ed3f1201ULL * cell_counter), r);
                Sample s;
                s.values.resize(cfg.n);
                for (auto& v : s.values)
                    v = rng.uniform() < pi ? rng.normal(mu, 1.0) : rng.normal();
                if (statistic(s) > cutoff) ++rej;
            }
            TailPowerRow row;
            row.pi = pi;
            row.mu = mu;
            row.cutoff = cutoff;
            row.power = static_cast<double>(rej) / static_cast<double>(cfg.replicates);
            out.push_back(row);
            ++cell_counter;
        }
    }
    return out;
}

std::vector<TimingRow> timing_bench(const std::vector<std::size_t>& sizes, std::size_t repeats,
                                    std::uint64_t seed, std::size_t m) {
    std::vector<TimingRow> out;
    double previous_median = 0.0;
    for (std::size_t n : sizes) {
        std::vector<double> times(repeats);
        double stat = 0.0;
        for (std::size_t r = 0; r < repeats; ++r) {
            Rng rng = Rng::substream(seed, r);
            PairedSample s;
            s.x.resize(n);
            s.y.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                s.x[i] = rng.uniform();
                s.y[i] = rng.uniform();
            }
            const auto t0 = std::chrono::steady_clock::now();
            stat = dependence_statistic(DependenceMethod::Lpinfor, s, m);
            const auto t1 = std::chrono::steady_clock::now();
            times[r] = std::chrono::duration<double>(t1 - t0).count();
        }
        TimingRow row;
        row.n = n;
        row.statistic = stat;
        double mean = 0.0;
        for (double t : times) mean += t;
        mean /= static_cast<double>(repeats);
        double var = 0.0;
        for (double t : times) var += (t - mean) * (t - mean);
        row.mean_seconds = mean;
        row.sd_seconds = std::sqrt(var / static_cast<double>(repeats));
        std::sort(times.begin(), times.end());
        row.median_seconds = times[repeats / 2];
        row.ratio_to_previous = previous_median > 0.0 ? row.median_seconds / previous_median : 0.0;
        previous_median = row.median_seconds;
        out.push_back(row);
    }
    return out;
}

}  // namespace lpstat
