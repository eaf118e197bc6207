// lpstat: command line front end for every analysis in the library.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "lpstat/comoments.hpp"
#include "lpstat/comparison_density.hpp"
#include "lpstat/copula.hpp"
#include "lpstat/correspondence.hpp"
#include "lpstat/csv.hpp"
#include "lpstat/errors.hpp"
#include "lpstat/lpinfor.hpp"
#include "lpstat/moments.hpp"
#include "lpstat/regress.hpp"
#include "lpstat/simulate.hpp"

#include <boost/math/distributions/chi_squared.hpp>

using json = nlohmann::json;
using namespace lpstat;

namespace {

constexpr const char* kVersion = "0.1.0";

// ------------------------------------------------------------------ helpers

std::string read_input_text(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--input", "cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CsvColumns load_columns(const std::string& path) {
    std::istringstream in(read_input_text(path));
    return read_csv_columns(in);
}

ContingencyTable load_table(const std::string& path, std::optional<double> n_override) {
    std::istringstream in(read_input_text(path));
    auto m = read_csv_matrix(in);
    return ContingencyTable(std::move(m.values), std::move(m.row_labels),
                            std::move(m.col_labels), n_override);
}

std::vector<double> pick_column(const CsvColumns& cols, const std::string& name) {
    if (name.empty()) return cols.columns.at(0);
    for (std::size_t i = 0; i < cols.names.size(); ++i)
        if (cols.names[i] == name) return cols.columns[i];
    // numeric index fallback
    try {
        const std::size_t idx = std::stoul(name);
        if (idx < cols.columns.size()) return cols.columns[idx];
    } catch (...) {
    }
    throw DataError("no column named '" + name + "'");
}

PairedSample load_pairs(const std::string& path, const std::string& cols_spec) {
    auto cols = load_columns(path);
    std::string a, b;
    const auto comma = cols_spec.find(',');
    if (!cols_spec.empty() && comma == std::string::npos)
        throw DataError("--cols expects two comma-separated names");
    if (!cols_spec.empty()) {
        a = cols_spec.substr(0, comma);
        b = cols_spec.substr(comma + 1);
    }
    PairedSample s;
    s.x = a.empty() ? cols.columns.at(0) : pick_column(cols, a);
    s.y = b.empty() ? (cols.columns.size() > 1 ? cols.columns.at(1)
                                               : throw DataError("need two columns"))
                    : pick_column(cols, b);
    if (s.x.size() != s.y.size()) throw DataError("columns have different lengths");
    return s;
}

SelectionOptions make_selection(const std::string& rule, double effect_cutoff) {
    SelectionOptions opt;
    opt.rule = selection_rule_from_string(rule);
    opt.effect_cutoff = effect_cutoff;
    return opt;
}

json envelope(const std::string& command, const json& config, const json& results,
              const std::vector<std::string>& warnings) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return json{{"schema", 1},        {"version", kVersion}, {"generated_at", stamp},
                {"command", command}, {"config", config},    {"warnings", warnings},
                {"results", results}};
}

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw DataError("cannot write file: " + out_path);
        out << doc.dump(2) << "\n";
    }
}

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    write_csv(out, header, rows);
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json comoments_to_json(const LPComomentMatrix& cm) {
    json sig = json::array();
    for (std::size_t j = 0; j < cm.m1(); ++j) {
        json row = json::array();
        for (std::size_t k = 0; k < cm.m2(); ++k) row.push_back(cm.flagged(j, k));
        sig.push_back(row);
    }
    json out{{"entries", matrix_to_json(cm.entries)},
             {"significance", sig},
             {"m", json::array({cm.m1(), cm.m2()})},
             {"zero_row", cm.zero_row},
             {"zero_col", cm.zero_col},
             {"mean_x", cm.mean_x},
             {"mean_y", cm.mean_y}};
    if (cm.n) out["n"] = *cm.n;
    return out;
}

void collect_basis_warnings(const ScoreBasis& b, const std::string& which,
                            std::vector<std::string>& warnings) {
    if (b.clipped())
        warnings.push_back(which + " basis clipped to " + std::to_string(b.m()) +
                           " functions (atoms - 1)");
    if (b.truncated())
        warnings.push_back(which + " basis truncated at " + std::to_string(b.m()) +
                           " functions (numerically dependent power)");
}

// ------------------------------------------------------------- subcommands

json run_moments(const json& cfg, std::vector<std::string>& warnings) {
    auto cols = load_columns(cfg.at("input"));
    Sample s{pick_column(cols, cfg.value("col", ""))};
    const std::size_t m = cfg.value("m", 4);

    auto d = std::make_shared<const DiscreteDist>(empirical_dist(s));
    auto b = build_scores(d, m);
    collect_basis_warnings(b, "sample", warnings);
    auto mv = lp_moments(*d, b, b.m());

    json results{{"n", s.n()},
                 {"mean", mv.mean},
                 {"var", mv.var},
                 {"lp", mv.coeffs},
                 {"m_effective", b.m()}};
    if (s.n() >= 3 && mv.var > 0.0) {
        auto da = dagostino(s);
        results["dagostino"] = {{"statistic", da.statistic}, {"short_tailed", da.short_tailed}};
    }

    if (cfg.contains("export_scores")) {
        // piecewise-constant unit scores: one row per (cell, order)
        std::vector<std::vector<double>> rows;
        for (std::size_t j = 1; j <= b.m(); ++j) {
            double left = 0.0;
            for (std::size_t i = 0; i < d->size(); ++i) {
                rows.push_back({left, d->cumulative()[i], static_cast<double>(j), b.at(j, i)});
                left = d->cumulative()[i];
            }
        }
        write_csv_file(cfg.at("export_scores"), {"u_left", "u_right", "j", "value"}, rows);
    }
    if (cfg.contains("export_table")) {
        std::vector<std::string> header{"atom"};
        for (std::size_t j = 1; j <= b.m(); ++j) header.push_back("t" + std::to_string(j));
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < d->size(); ++i) {
            std::vector<double> row{d->atoms()[i]};
            for (std::size_t j = 1; j <= b.m(); ++j) row.push_back(b.at(j, i));
            rows.push_back(row);
        }
        write_csv_file(cfg.at("export_table"), header, rows);
    }
    return results;
}

LPComomentMatrix comoments_from_config(const json& cfg, std::vector<std::string>& warnings) {
    const std::size_t m = cfg.value("m", 4);
    auto sel = make_selection(cfg.value("select", "threshold"), cfg.value("effect_cutoff", 0.1));
    LPComomentMatrix cm;
    if (cfg.value("table", false)) {
        std::optional<double> n;
        if (cfg.contains("n")) n = cfg.at("n").get<double>();
        auto t = load_table(cfg.at("input"), n);
        if (!t.n()) warnings.push_back(
            "probability table without a sample size: significance flags use the "
            "effect-size cutoff " + std::to_string(sel.effect_cutoff));
        cm = lp_comoments(t, m, sel);
    } else {
        cm = lp_comoments(load_pairs(cfg.at("input"), cfg.value("cols", "")), m, sel);
    }
    collect_basis_warnings(*cm.basis_x, "x", warnings);
    collect_basis_warnings(*cm.basis_y, "y", warnings);
    return cm;
}

json run_comoments(const json& cfg, std::vector<std::string>& warnings) {
    auto cm = comoments_from_config(cfg, warnings);
    json results = comoments_to_json(cm);
    results["spearman_lp11"] = cm.entries(0, 0);
    if (cfg.contains("csv")) {
        std::vector<std::string> header;
        for (std::size_t k = 1; k <= cm.m2(); ++k) header.push_back("k" + std::to_string(k));
        std::vector<std::vector<double>> rows;
        for (std::size_t j = 0; j < cm.m1(); ++j) {
            std::vector<double> row(cm.entries.row(j).begin(), cm.entries.row(j).end());
            rows.push_back(row);
        }
        write_csv_file(cfg.at("csv"), header, rows);
    }
    return results;
}

Baseline baseline_from_config(const json& cfg, const Sample& data) {
    const auto kind = Baseline::kind_from_string(cfg.at("baseline"));
    if (cfg.value("fit", false)) return Baseline::fit(kind, data);
    if (kind == Baseline::Kind::Discrete) {
        auto cols = load_columns(cfg.at("baseline_file"));
        return Baseline::discrete(
            DiscreteDist::from_masses(cols.columns.at(0), cols.columns.at(1)));
    }
    if (!cfg.contains("params"))
        throw DataError("baseline needs --params or --fit");
    const std::vector<double> p = cfg.at("params").get<std::vector<double>>();
    switch (kind) {
        case Baseline::Kind::Normal:
            if (p.size() != 2) throw DataError("normal baseline needs mu,sigma");
            return Baseline::normal(p[0], p[1]);
        case Baseline::Kind::Exponential:
            if (p.size() != 1) throw DataError("exponential baseline needs mean");
            return Baseline::exponential(p[0]);
        case Baseline::Kind::Gamma:
            if (p.size() != 2) throw DataError("gamma baseline needs shape,rate");
            return Baseline::gamma(p[0], p[1]);
        case Baseline::Kind::Poisson:
            if (p.size() != 1) throw DataError("poisson baseline needs lambda");
            return Baseline::poisson(p[0]);
        default:
            throw DataError("unsupported baseline parameters");
    }
}

json run_gof(const json& cfg, std::vector<std::string>& warnings,
             std::optional<ComparisonDensity>& cd_out) {
    auto cols = load_columns(cfg.at("input"));
    Sample data{pick_column(cols, cfg.value("col", ""))};
    auto g = baseline_from_config(cfg, data);
    const std::size_t m = cfg.value("m", 4);
    auto coeffs = gof_components(data, g, m);

    auto selopt = make_selection(cfg.value("select", "aic"), cfg.value("effect_cutoff", 0.1));
    auto selected = select_components(coeffs, static_cast<double>(data.n()), selopt);
    auto stat = gof_statistic(coeffs, selected);

    const bool exp_form = cfg.value("form", "l2") == std::string("exp");
    cd_out.emplace(exp_form
                       ? fit_exponential(g, coeffs, selected, static_cast<double>(data.n()))
                       : fit_l2(g, coeffs, selected, static_cast<double>(data.n())));
    if (cd_out->clipped_mass() > 1e-12)
        warnings.push_back("comparison density clipped negative mass " +
                           std::to_string(cd_out->clipped_mass()));

    std::vector<std::size_t> orders;
    for (auto s : selected) orders.push_back(s + 1);
    json results{{"baseline", g.describe()},
                 {"n", data.n()},
                 {"coeffs", coeffs},
                 {"selected", orders},
                 {"statistic", {{"raw", stat.raw}, {"smooth", stat.smooth}}},
                 {"df", {{"raw", stat.df_raw}, {"smooth", stat.df_smooth}}}};
    const double scaled = static_cast<double>(data.n()) * stat.raw;
    boost::math::chi_squared_distribution<double> ref(static_cast<double>(stat.df_raw));
    results["pvalue"] = 1.0 - boost::math::cdf(ref, scaled);
    results["pvalue_df"] = stat.df_raw;
    if (exp_form) {
        results["theta"] = cd_out->coeffs();
        results["log_normalizer"] = cd_out->log_normalizer();
    }
    return results;
}

json run_density(const json& cfg, std::vector<std::string>& warnings) {
    std::optional<ComparisonDensity> cd;
    json results = run_gof(cfg, warnings, cd);
    if (cfg.contains("grid_csv")) {
        std::vector<std::vector<double>> rows;
        const Baseline& g = cd->baseline();
        if (g.is_discrete()) {
            for (double x : g.dist().atoms())
                rows.push_back({x, g.pdf(x), lp_skew_density(*cd, x)});
        } else {
            double lo, hi;
            std::size_t npts = cfg.value("grid_points", 512);
            if (cfg.contains("grid_lo")) {
                lo = cfg.at("grid_lo").get<double>();
                hi = cfg.at("grid_hi").get<double>();
            } else {
                lo = g.quantile(1e-5);
                hi = g.quantile(1.0 - 1e-5);
            }
            for (std::size_t i = 0; i < npts; ++i) {
                const double x = lo + (hi - lo) * static_cast<double>(i) /
                                          static_cast<double>(npts - 1);
                rows.push_back({x, g.pdf(x), lp_skew_density(*cd, x)});
            }
        }
        write_csv_file(cfg.at("grid_csv"), {"x", "baseline", "density"}, rows);
    }
    return results;
}

json run_copula(const json& cfg, std::vector<std::string>& warnings) {
    auto cm = comoments_from_config(cfg, warnings);
    const std::string form = cfg.value("form", "l2");

    std::vector<std::pair<std::size_t, std::size_t>> sel;
    if (cfg.value("select", "threshold") == std::string("all"))
        sel = full_selection(cm);
    else
        sel = flagged_selection(cm);

    CopulaModel model;
    if (form == "canonical") {
        const std::size_t r = cfg.value("rank", std::min(cm.m1(), cm.m2()));
        model = fit_canonical_copula(cm, r);
    } else if (form == "exp") {
        model = fit_exponential_copula(cm, sel);
    } else if (form == "l2") {
        model = fit_l2_copula(cm, sel);
    } else {
        throw DataError("unknown copula form: " + form);
    }

    json results{{"form", form}, {"comoments", comoments_to_json(cm)}};
    if (form == "canonical") {
        results["singular_values"] = model.singular_values();
        results["rank"] = model.rank();
    }
    if (form == "exp") {
        results["theta"] = matrix_to_json(model.theta());
        results["log_normalizer"] = model.log_normalizer();
    }
    json selections = json::array();
    for (auto [j, k] : model.selection()) selections.push_back(json::array({j + 1, k + 1}));
    results["selection"] = selections;

    if (cfg.contains("grid_csv")) {
        const std::size_t res = cfg.value("grid_res", 101);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < res; ++i)
            for (std::size_t j = 0; j < res; ++j) {
                const double u = (i + 0.5) / static_cast<double>(res);
                const double v = (j + 0.5) / static_cast<double>(res);
                rows.push_back({u, v, model.density(u, v)});
            }
        write_csv_file(cfg.at("grid_csv"), {"u", "v", "density"}, rows);
    }
    if (cfg.contains("slices") && cfg.contains("slices_csv")) {
        const std::vector<double> us = cfg.at("slices").get<std::vector<double>>();
        std::vector<std::vector<double>> rows;
        const std::size_t res = cfg.value("grid_res", 101);
        for (double u : us)
            for (std::size_t j = 0; j < res; ++j) {
                const double v = (j + 0.5) / static_cast<double>(res);
                rows.push_back({u, v, model.slice_density(u, v)});
            }
        write_csv_file(cfg.at("slices_csv"), {"u", "v", "density"}, rows);
    }
    return results;
}

json run_corresp(const json& cfg, std::vector<std::string>& warnings) {
    auto t = load_table(cfg.at("input"), std::nullopt);
    const std::size_t r = cfg.value("rank", 2);
    const auto variant = cfg.value("variant", "ca") == std::string("goodman")
                             ? CorrespondenceVariant::Goodman
                             : CorrespondenceVariant::CA;
    auto res = correspondence_analysis(t, r, variant);
    (void)warnings;

    json rows = json::array();
    auto add_rows = [&](const Matrix& coords, const std::vector<std::string>& labels,
                        const std::vector<double>& mass, const std::string& kind) {
        for (std::size_t i = 0; i < coords.rows(); ++i) {
            json row{{"label", labels[i]}, {"kind", kind}, {"mass", mass[i]}};
            for (std::size_t k = 0; k < coords.cols(); ++k)
                row["dim" + std::to_string(k + 1)] = coords(i, k);
            rows.push_back(row);
        }
    };
    add_rows(res.row_coords, res.row_labels, res.row_mass, "row");
    add_rows(res.col_coords, res.col_labels, res.col_mass, "col");

    json results{{"variant", variant == CorrespondenceVariant::CA ? "ca" : "goodman"},
                 {"rank", r},
                 {"singular_values", res.singular_values},
                 {"inertia_share", res.inertia_share},
                 {"points", rows}};

    if (cfg.contains("csv")) {
        std::ofstream out(cfg.at("csv").get<std::string>());
        if (!out) throw DataError("cannot write file: " + cfg.at("csv").get<std::string>());
        out << "label,kind";
        for (std::size_t k = 1; k <= r; ++k) out << ",dim" << k;
        out << ",mass,inertia_share\n";
        double total_inertia = 0.0;
        for (double s : res.singular_values) total_inertia += s * s;
        // per-point share: mass times squared distance over the total inertia
        auto dump = [&](const Matrix& coords, const std::vector<std::string>& labels,
                        const std::vector<double>& mass, const std::string& kind) {
            for (std::size_t i = 0; i < coords.rows(); ++i) {
                out << labels[i] << "," << kind;
                double dist2 = 0.0;
                for (std::size_t k = 0; k < coords.cols(); ++k) {
                    out << "," << format_double(coords(i, k));
                    dist2 += coords(i, k) * coords(i, k);
                }
                out << "," << format_double(mass[i]) << ","
                    << format_double(total_inertia > 0.0 ? mass[i] * dist2 / total_inertia : 0.0)
                    << "\n";
            }
        };
        dump(res.row_coords, res.row_labels, res.row_mass, "row");
        dump(res.col_coords, res.col_labels, res.col_mass, "col");
    }
    return results;
}

json run_lpinfor(const json& cfg, std::vector<std::string>& warnings) {
    LpinforOptions opt;
    opt.m = cfg.value("m", 4);
    opt.selection = make_selection(cfg.value("select", "threshold"), cfg.value("effect_cutoff", 0.1));
    opt.permutations = cfg.value("perm", 0);
    opt.seed = cfg.value("seed", 1);
    opt.threads = cfg.value("threads", 1);

    LPInforResult r;
    LPComomentMatrix cm = comoments_from_config(cfg, warnings);
    r = lpinfor(cm, opt.selection);
    if (opt.permutations > 0) {
        PermutationTest pcfg;
        pcfg.statistic = TestStatistic::LpinforRaw;
        pcfg.m = opt.m;
        pcfg.selection = opt.selection;
        pcfg.replicates = opt.permutations;
        pcfg.seed = opt.seed;
        pcfg.threads = opt.threads;
        PermutationResult pr;
        if (cfg.value("table", false)) {
            std::optional<double> n;
            if (cfg.contains("n")) n = cfg.at("n").get<double>();
            pr = permutation_pvalue(load_table(cfg.at("input"), n), pcfg);
        } else {
            pr = permutation_pvalue(load_pairs(cfg.at("input"), cfg.value("cols", "")), pcfg);
        }
        r.pvalue = pr.pvalue;
        r.seed = pr.seed;
        r.permutations = pr.replicates;
    }

    json results{{"raw", r.raw},
                 {"smooth", r.smooth},
                 {"df_raw", r.df_raw},
                 {"df_smooth", r.df_smooth},
                 {"selection", to_string(r.rule)},
                 {"comoments", comoments_to_json(cm)}};
    if (r.linearity) results["linearity"] = *r.linearity;
    if (r.pvalue) {
        results["pvalue"] = *r.pvalue;
        results["seed"] = r.seed;
        results["permutations"] = r.permutations;
    }
    return results;
}

json run_regress(const json& cfg, std::vector<std::string>& warnings) {
    auto s = load_pairs(cfg.at("input"), cfg.value("cols", ""));
    const std::size_t m = cfg.value("m", 4);
    auto mean_rule = make_selection(cfg.value("select", "threshold"), cfg.value("effect_cutoff", 0.1));
    auto model = fit_conditional(s, m, mean_rule, cfg.value("smooth_y", false));
    collect_basis_warnings(*model.comoments().basis_x, "x", warnings);

    QuantileOptions qopt;
    qopt.path = cfg.value("path", "invert") == std::string("sample") ? QuantilePath::Sample
                                                                     : QuantilePath::Invert;
    qopt.seed = cfg.value("seed", 1);

    std::vector<double> vs = cfg.value("target_quantiles", std::vector<double>{0.1, 0.25, 0.5, 0.75, 0.9});
    const std::size_t ugrid = cfg.value("u_grid", 101);

    std::vector<std::size_t> orders;
    for (auto j : model.mean_selection()) orders.push_back(j + 1);
    json results{{"n", s.n()},
                 {"mean_y", model.mean_y()},
                 {"mean_coefficients", model.comoments().zero_col},
                 {"mean_selected", orders},
                 {"path", qopt.path == QuantilePath::Sample ? "sample" : "invert"},
                 {"seed", qopt.seed}};

    if (cfg.contains("curves_csv")) {
        const auto& dx = model.comoments().basis_x->dist();
        std::vector<std::string> header{"u", "x", "mean"};
        for (double v : vs) header.push_back("q" + format_double(v));
        std::vector<std::vector<double>> rows;
        for (std::size_t g = 0; g < ugrid; ++g) {
            const double u = (g + 0.5) / static_cast<double>(ugrid);
            const double x = quantile(dx, u);
            std::vector<double> row{u, x, conditional_mean(model, x)};
            for (double v : vs) row.push_back(conditional_quantile(model, u, v, qopt));
            rows.push_back(row);
        }
        write_csv_file(cfg.at("curves_csv"), header, rows);
    }
    if (cfg.contains("density_at") && cfg.contains("density_csv")) {
        const std::vector<double> us = cfg.at("density_at").get<std::vector<double>>();
        const auto& dy = model.comoments().basis_y->dist();
        std::vector<std::vector<double>> rows;
        for (double u : us) {
            auto pmf = conditional_pmf(model, u);
            for (std::size_t l = 0; l < dy.size(); ++l)
                rows.push_back({u, dy.atoms()[l], pmf[l]});
        }
        write_csv_file(cfg.at("density_csv"), {"u", "y", "mass"}, rows);
    }
    return results;
}

json run_power_sim(const json& cfg, std::vector<std::string>& warnings) {
    (void)warnings;
    PowerStudyConfig pc;
    pc.b0 = cfg.value("b0", 250);
    pc.b1 = cfg.value("b1", 200);
    pc.m = cfg.value("m", 4);
    pc.seed = cfg.value("seed", 1);
    pc.threads = cfg.value("threads", 1);
    const std::size_t n = cfg.value("n", 300);

    const auto patterns = cfg.value("patterns", std::vector<std::string>{"linear"});
    const auto noises = cfg.value("noise", std::vector<std::string>{"e1"});
    const auto levels = cfg.value("levels", std::vector<double>{1.0});
    for (const auto& pat : patterns)
        for (const auto& noi : noises)
            for (double level : levels) {
                Scenario sc;
                sc.pattern = pattern_from_string(pat);
                sc.noise = noise_from_string(noi);
                sc.level = level;
                sc.n = n;
                pc.scenarios.push_back(sc);
            }

    auto cells = power_study(pc);
    json rows = json::array();
    std::vector<std::vector<double>> csv_rows;
    for (const auto& c : cells) {
        rows.push_back(json{{"pattern", to_string(c.pattern)},
                            {"noise", to_string(c.noise)},
                            {"level", c.level},
                            {"method", to_string(c.method)},
                            {"cutoff", c.cutoff},
                            {"power", c.power},
                            {"null_rate", c.null_rate}});
    }
    json results{{"cells", rows},
                 {"b0", pc.b0},
                 {"b1", pc.b1},
                 {"n", n},
                 {"seed", pc.seed}};
    if (cfg.contains("csv")) {
        std::ofstream out(cfg.at("csv").get<std::string>());
        if (!out) throw DataError("cannot write file: " + cfg.at("csv").get<std::string>());
        out << "pattern,noise,noise_level,method,cutoff,power,null_rate\n";
        for (const auto& c : cells)
            out << to_string(c.pattern) << "," << to_string(c.noise) << ","
                << format_double(c.level) << "," << to_string(c.method) << ","
                << format_double(c.cutoff) << "," << format_double(c.power) << ","
                << format_double(c.null_rate) << "\n";
    }
    return results;
}

json run_bench(const json& cfg, std::vector<std::string>& warnings) {
    (void)warnings;
    const auto sizes = cfg.value("sizes", std::vector<std::size_t>{100, 1000, 10000});
    const std::size_t repeats = cfg.value("repeats", 50);
    auto rows = timing_bench(sizes, repeats, cfg.value("seed", 1), cfg.value("m", 4));
    json out = json::array();
    std::vector<std::vector<double>> csv_rows;
    for (const auto& r : rows) {
        out.push_back(json{{"n", r.n},
                           {"mean_seconds", r.mean_seconds},
                           {"sd_seconds", r.sd_seconds},
                           {"median_seconds", r.median_seconds},
                           {"ratio_to_previous", r.ratio_to_previous},
                           {"statistic", r.statistic}});
        csv_rows.push_back({static_cast<double>(r.n), r.mean_seconds, r.sd_seconds,
                            r.median_seconds, r.ratio_to_previous, r.statistic});
    }
    if (cfg.contains("csv"))
        write_csv_file(cfg.at("csv"),
                       {"n", "mean_seconds", "sd_seconds", "median_seconds",
                        "ratio_to_previous", "statistic"},
                       csv_rows);
    return json{{"rows", out}, {"repeats", repeats}, {"seed", cfg.value("seed", 1)}};
}

json dispatch(const std::string& command, const json& cfg, std::vector<std::string>& warnings) {
    if (command == "moments") return run_moments(cfg, warnings);
    if (command == "comoments") return run_comoments(cfg, warnings);
    if (command == "gof") {
        std::optional<ComparisonDensity> cd;
        return run_gof(cfg, warnings, cd);
    }
    if (command == "density") return run_density(cfg, warnings);
    if (command == "copula") return run_copula(cfg, warnings);
    if (command == "corresp") return run_corresp(cfg, warnings);
    if (command == "lpinfor") return run_lpinfor(cfg, warnings);
    if (command == "regress") return run_regress(cfg, warnings);
    if (command == "power-sim") return run_power_sim(cfg, warnings);
    if (command == "bench") return run_bench(cfg, warnings);
    throw DataError("unknown command in envelope: " + command);
}

// minimal flat TOML subset: key = value with numbers, strings, booleans and
// arrays of numbers/strings; sections and comments are ignored
json parse_toml_subset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    json out;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) continue;
        auto parse_scalar = [&trim](std::string v) -> json {
            v = trim(v);
            if (v.size() >= 2 && (v.front() == '"' || v.front() == '\''))
                return v.substr(1, v.size() - 2);
            if (v == "true") return true;
            if (v == "false") return false;
            try {
                if (v.find_first_of(".eE") != std::string::npos) return std::stod(v);
                return std::stoll(v);
            } catch (...) {
                return v;
            }
        };
        if (val.front() == '[') {
            json arr = json::array();
            std::string inner = val.substr(1, val.rfind(']') - 1);
            std::stringstream ss(inner);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!trim(item).empty()) arr.push_back(parse_scalar(item));
            out[key] = arr;
        } else {
            out[key] = parse_scalar(val);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LP statistical modeling toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // shared option storage; each subcommand builds a config json from it
    struct Opts {
        std::string input, col, cols, out, csv, select = "threshold", form = "l2";
        std::string baseline, baseline_file, variant = "ca", path = "invert", config_file;
        std::string export_scores, export_table, grid_csv, slices_csv, curves_csv, density_csv;
        std::string format = "json";
        std::vector<double> params, slices, target_quantiles, levels, density_at;
        std::vector<std::string> patterns{"linear"}, noise{"e1"};
        std::vector<std::size_t> sizes{100, 1000, 10000};
        std::size_t m = 4, rank = 2, grid_res = 101, u_grid = 101;
        std::size_t b0 = 250, b1 = 200, n_sim = 300, repeats = 50, perm = 0, threads = 0;
        std::size_t grid_points = 512;
        double effect_cutoff = 0.1, n_override = 0.0, grid_lo = 0.0, grid_hi = 0.0;
        bool table = false, fit = false, smooth_y = false;
        std::uint64_t seed = 1;
    } o;

    auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
        if (needs_input)
            cmd->add_option("--input", o.input, "input CSV path, or - for stdin")->required();
        cmd->add_option("--out", o.out, "output path for the JSON envelope (default stdout)");
        cmd->add_option("--seed", o.seed, "random seed (recorded in the output)");
        cmd->add_option("--threads", o.threads, "worker threads (default LPSTAT_THREADS or 1)");
    };

    auto* c_moments = app.add_subcommand("moments", "LP moments of one sample");
    add_common(c_moments);
    c_moments->add_option("--col", o.col, "column name or index");
    c_moments->add_option("--m", o.m, "number of score functions");
    c_moments->add_option("--export-scores", o.export_scores, "unit-score step CSV");
    c_moments->add_option("--export-table", o.export_table, "score table CSV (atoms x T_j)");

    auto* c_comoments = app.add_subcommand("comoments", "LP comoment matrix of a pair or table");
    add_common(c_comoments);
    c_comoments->add_flag("--table", o.table, "input is a labeled contingency table");
    c_comoments->add_option("--cols", o.cols, "two column names, e.g. x,y");
    c_comoments->add_option("--m", o.m, "matrix order");
    c_comoments->add_option("--select", o.select, "flag rule: threshold|aic|bic|effect|all");
    c_comoments->add_option("--effect-cutoff", o.effect_cutoff, "effect-size cutoff");
    c_comoments->add_option("--n", o.n_override, "sample size for probability tables");
    c_comoments->add_option("--csv", o.csv, "also write the matrix as CSV");

    auto* c_gof = app.add_subcommand("gof", "goodness-of-fit components and statistic");
    add_common(c_gof);
    c_gof->add_option("--col", o.col, "column name or index");
    c_gof->add_option("--baseline", o.baseline, "normal|exponential|gamma|poisson|discrete")
        ->required();
    c_gof->add_option("--params", o.params, "baseline parameters");
    c_gof->add_flag("--fit", o.fit, "fit baseline parameters by moments");
    c_gof->add_option("--baseline-file", o.baseline_file, "atom,mass CSV for a discrete baseline");
    c_gof->add_option("--m", o.m, "number of components");
    c_gof->add_option("--select", o.select, "aic|threshold|bic|effect|all")->default_val("aic");
    c_gof->add_option("--form", o.form, "l2|exp");

    auto* c_density = app.add_subcommand("density", "LP skew density estimate");
    add_common(c_density);
    c_density->add_option("--col", o.col, "column name or index");
    c_density->add_option("--baseline", o.baseline, "normal|exponential|gamma|poisson|discrete")
        ->required();
    c_density->add_option("--params", o.params, "baseline parameters");
    c_density->add_flag("--fit", o.fit, "fit baseline parameters by moments");
    c_density->add_option("--baseline-file", o.baseline_file, "atom,mass CSV baseline");
    c_density->add_option("--m", o.m, "number of components");
    c_density->add_option("--select", o.select, "aic|threshold|bic|effect|all")->default_val("aic");
    c_density->add_option("--form", o.form, "l2|exp");
    c_density->add_option("--grid-csv", o.grid_csv, "density grid CSV output");
    c_density->add_option("--grid-points", o.grid_points, "grid resolution");
    c_density->add_option("--grid-lo", o.grid_lo, "grid lower bound");
    c_density->add_option("--grid-hi", o.grid_hi, "grid upper bound");

    auto* c_copula = app.add_subcommand("copula", "copula density models");
    add_common(c_copula);
    c_copula->add_flag("--table", o.table, "input is a labeled contingency table");
    c_copula->add_option("--cols", o.cols, "two column names");
    c_copula->add_option("--m", o.m, "comoment order");
    c_copula->add_option("--form", o.form, "l2|exp|canonical");
    c_copula->add_option("--rank", o.rank, "canonical truncation rank");
    c_copula->add_option("--select", o.select, "threshold|aic|bic|effect|all");
    c_copula->add_option("--effect-cutoff", o.effect_cutoff, "effect-size cutoff");
    c_copula->add_option("--n", o.n_override, "sample size for probability tables");
    c_copula->add_option("--grid-csv", o.grid_csv, "copula grid CSV (u,v,density)");
    c_copula->add_option("--grid-res", o.grid_res, "grid resolution per axis");
    c_copula->add_option("--slices", o.slices, "slice positions u");
    c_copula->add_option("--slices-csv", o.slices_csv, "slice CSV output");

    auto* c_corresp = app.add_subcommand("corresp", "correspondence analysis of a table");
    add_common(c_corresp);
    c_corresp->add_option("--rank", o.rank, "number of axes");
    c_corresp->add_option("--variant", o.variant, "ca|goodman");
    c_corresp->add_option("--csv", o.csv, "coordinate CSV output");

    auto* c_lpinfor = app.add_subcommand("lpinfor", "dependence statistic");
    add_common(c_lpinfor);
    c_lpinfor->add_flag("--table", o.table, "input is a labeled contingency table");
    c_lpinfor->add_option("--cols", o.cols, "two column names");
    c_lpinfor->add_option("--m", o.m, "comoment order");
    c_lpinfor->add_option("--select", o.select, "threshold|aic|bic|effect|all");
    c_lpinfor->add_option("--effect-cutoff", o.effect_cutoff, "effect-size cutoff");
    c_lpinfor->add_option("--n", o.n_override, "sample size for probability tables");
    c_lpinfor->add_option("--perm", o.perm, "permutation replicates for the p-value");

    auto* c_regress = app.add_subcommand("regress", "copula-based conditional modeling");
    add_common(c_regress);
    c_regress->add_option("--cols", o.cols, "two column names (x = predictor)");
    c_regress->add_option("--m", o.m, "comoment order");
    c_regress->add_option("--select", o.select, "mean coefficient selection rule");
    c_regress->add_option("--target-quantiles", o.target_quantiles, "quantile levels");
    c_regress->add_option("--u-grid", o.u_grid, "number of u grid points");
    c_regress->add_option("--path", o.path, "invert|sample");
    c_regress->add_flag("--smooth-y", o.smooth_y, "LP skew smooth the Y margin");
    c_regress->add_option("--curves-csv", o.curves_csv, "mean/quantile curve CSV");
    c_regress->add_option("--density-at", o.density_at, "u positions for density export");
    c_regress->add_option("--density-csv", o.density_csv, "conditional density CSV");

    auto* c_power = app.add_subcommand("power-sim", "dependence power study");
    add_common(c_power, /*needs_input=*/false);
    c_power->add_option("--patterns", o.patterns, "patterns to simulate");
    c_power->add_option("--noise", o.noise, "noise regimes: e1 e2 e3 e4");
    c_power->add_option("--levels", o.levels, "noise levels");
    c_power->add_option("--n", o.n_sim, "sample size per replicate");
    c_power->add_option("--b0", o.b0, "null replicates for the cutoffs");
    c_power->add_option("--b1", o.b1, "alternative replicates");
    c_power->add_option("--m", o.m, "comoment order for the statistic");
    c_power->add_option("--csv", o.csv, "power table CSV output");
    c_power->add_option("--config", o.config_file, "TOML-subset config file");

    auto* c_bench = app.add_subcommand("bench", "statistic timing benchmark");
    add_common(c_bench, /*needs_input=*/false);
    c_bench->add_option("--sizes", o.sizes, "sample sizes");
    c_bench->add_option("--repeats", o.repeats, "repeats per size");
    c_bench->add_option("--m", o.m, "comoment order");
    c_bench->add_option("--csv", o.csv, "timing CSV output");

    auto* c_verify = app.add_subcommand("verify", "re-run a JSON envelope and compare");
    c_verify->add_option("--input", o.input, "envelope JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);  // usage errors exit 1, --help exits 0
    }

    try {
        if (o.threads == 0) {
            const char* env = std::getenv("LPSTAT_THREADS");
            o.threads = env ? std::strtoul(env, nullptr, 10) : 1;
            if (o.threads == 0) o.threads = 1;
        }

        std::string command;
        json cfg;
        if (app.got_subcommand(c_verify)) {
            std::ifstream in(o.input);
            if (!in) throw CLI::ValidationError("--input", "cannot open file: " + o.input);
            json doc = json::parse(in);
            std::vector<std::string> warnings;
            json rerun = dispatch(doc.at("command"), doc.at("config"), warnings);
            if (rerun.dump() == doc.at("results").dump()) {
                std::cout << "verified: results reproduce bit-exactly\n";
                return 0;
            }
            std::cerr << "mismatch: re-run results differ from the envelope\n";
            return 1;
        }

        auto put_if = [&cfg](const std::string& key, const std::string& v) {
            if (!v.empty()) cfg[key] = v;
        };
        if (app.got_subcommand(c_moments)) {
            command = "moments";
            cfg = {{"input", o.input}, {"m", o.m}};
            put_if("col", o.col);
            put_if("export_scores", o.export_scores);
            put_if("export_table", o.export_table);
        } else if (app.got_subcommand(c_comoments)) {
            command = "comoments";
            cfg = {{"input", o.input}, {"m", o.m},
                   {"select", o.select}, {"effect_cutoff", o.effect_cutoff},
                   {"table", o.table}};
            put_if("cols", o.cols);
            put_if("csv", o.csv);
            if (o.n_override > 0) cfg["n"] = o.n_override;
        } else if (app.got_subcommand(c_gof) || app.got_subcommand(c_density)) {
            command = app.got_subcommand(c_gof) ? "gof" : "density";
            cfg = {{"input", o.input}, {"m", o.m},       {"select", o.select},
                   {"form", o.form},   {"fit", o.fit},   {"baseline", o.baseline},
                   {"effect_cutoff", o.effect_cutoff}};
            put_if("col", o.col);
            put_if("baseline_file", o.baseline_file);
            if (!o.params.empty()) cfg["params"] = o.params;
            if (command == "density") {
                put_if("grid_csv", o.grid_csv);
                cfg["grid_points"] = o.grid_points;
                if (c_density->count("--grid-lo")) {
                    cfg["grid_lo"] = o.grid_lo;
                    cfg["grid_hi"] = o.grid_hi;
                }
            }
        } else if (app.got_subcommand(c_copula)) {
            command = "copula";
            cfg = {{"input", o.input},   {"m", o.m},
                   {"select", o.select}, {"effect_cutoff", o.effect_cutoff},
                   {"form", o.form},     {"table", o.table},
                   {"grid_res", o.grid_res}};
            put_if("cols", o.cols);
            put_if("grid_csv", o.grid_csv);
            put_if("slices_csv", o.slices_csv);
            if (c_copula->count("--rank")) cfg["rank"] = o.rank;
            if (!o.slices.empty()) cfg["slices"] = o.slices;
            if (o.n_override > 0) cfg["n"] = o.n_override;
        } else if (app.got_subcommand(c_corresp)) {
            command = "corresp";
            cfg = {{"input", o.input}, {"rank", o.rank}, {"variant", o.variant}};
            put_if("csv", o.csv);
        } else if (app.got_subcommand(c_lpinfor)) {
            command = "lpinfor";
            cfg = {{"input", o.input},   {"m", o.m},
                   {"select", o.select}, {"effect_cutoff", o.effect_cutoff},
                   {"table", o.table},   {"perm", o.perm},
                   {"seed", o.seed},     {"threads", o.threads}};
            put_if("cols", o.cols);
            if (o.n_override > 0) cfg["n"] = o.n_override;
        } else if (app.got_subcommand(c_regress)) {
            command = "regress";
            cfg = {{"input", o.input}, {"m", o.m},        {"select", o.select},
                   {"path", o.path},   {"seed", o.seed},  {"u_grid", o.u_grid},
                   {"smooth_y", o.smooth_y}, {"effect_cutoff", o.effect_cutoff}};
            put_if("cols", o.cols);
            put_if("curves_csv", o.curves_csv);
            put_if("density_csv", o.density_csv);
            if (!o.target_quantiles.empty()) cfg["target_quantiles"] = o.target_quantiles;
            if (!o.density_at.empty()) cfg["density_at"] = o.density_at;
        } else if (app.got_subcommand(c_power)) {
            command = "power-sim";
            if (!o.config_file.empty()) cfg = parse_toml_subset(o.config_file);
            if (!cfg.contains("patterns")) cfg["patterns"] = o.patterns;
            if (!cfg.contains("noise")) cfg["noise"] = o.noise;
            if (!cfg.contains("levels"))
                cfg["levels"] = o.levels.empty() ? std::vector<double>{1.0} : o.levels;
            if (!cfg.contains("n")) cfg["n"] = o.n_sim;
            if (!cfg.contains("b0")) cfg["b0"] = o.b0;
            if (!cfg.contains("b1")) cfg["b1"] = o.b1;
            if (!cfg.contains("m")) cfg["m"] = o.m;
            if (!cfg.contains("seed")) cfg["seed"] = o.seed;
            if (!cfg.contains("threads")) cfg["threads"] = o.threads;
            put_if("csv", o.csv);
        } else if (app.got_subcommand(c_bench)) {
            command = "bench";
            cfg = {{"sizes", o.sizes}, {"repeats", o.repeats}, {"m", o.m}, {"seed", o.seed}};
            put_if("csv", o.csv);
        }

        std::vector<std::string> warnings;
        json results = dispatch(command, cfg, warnings);
        emit(envelope(command, cfg, results, warnings), o.out);
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
