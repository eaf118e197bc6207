// Python bindings exposing the main operations of the C++ core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lpstat/comoments.hpp"
#include "lpstat/comparison_density.hpp"
#include "lpstat/copula.hpp"
#include "lpstat/correspondence.hpp"
#include "lpstat/lpinfor.hpp"
#include "lpstat/moments.hpp"
#include "lpstat/regress.hpp"
#include "lpstat/simulate.hpp"

namespace py = pybind11;
using namespace lpstat;

namespace {

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw DataError("empty table");
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw DataError("ragged table");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<double>> from_matrix(const Matrix& m) {
    std::vector<std::vector<double>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows[i].assign(m.row(i).begin(), m.row(i).end());
    return rows;
}

SelectionOptions selection_from(const std::string& rule, double effect_cutoff) {
    SelectionOptions opt;
    opt.rule = selection_rule_from_string(rule);
    opt.effect_cutoff = effect_cutoff;
    return opt;
}

py::dict comoments_dict(const LPComomentMatrix& cm) {
    py::dict d;
    d["entries"] = from_matrix(cm.entries);
    std::vector<std::vector<bool>> sig(cm.m1(), std::vector<bool>(cm.m2()));
    for (std::size_t j = 0; j < cm.m1(); ++j)
        for (std::size_t k = 0; k < cm.m2(); ++k) sig[j][k] = cm.flagged(j, k);
    d["significant"] = sig;
    d["zero_row"] = cm.zero_row;
    d["zero_col"] = cm.zero_col;
    d["mean_x"] = cm.mean_x;
    d["mean_y"] = cm.mean_y;
    if (cm.n) d["n"] = *cm.n;
    return d;
}

Baseline baseline_from(const std::string& kind, const std::vector<double>& params,
                       const std::vector<double>& fit_to) {
    const auto k = Baseline::kind_from_string(kind);
    if (!fit_to.empty()) return Baseline::fit(k, Sample{fit_to});
    switch (k) {
        case Baseline::Kind::Normal: return Baseline::normal(params.at(0), params.at(1));
        case Baseline::Kind::Exponential: return Baseline::exponential(params.at(0));
        case Baseline::Kind::Gamma: return Baseline::gamma(params.at(0), params.at(1));
        case Baseline::Kind::Poisson: return Baseline::poisson(params.at(0));
        default: throw DataError("discrete baselines need explicit atoms/masses");
    }
}

}  // namespace

PYBIND11_MODULE(_lpstat, m) {
    m.doc() = "Orthonormal score functions, LP moments/comoments, copula models "
              "and dependence statistics";
    m.attr("__version__") = "0.1.0";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    m.def("empirical_dist", [](const std::vector<double>& values) {
        auto d = empirical_dist(Sample{values});
        py::dict out;
        out["atoms"] = d.atoms();
        out["masses"] = d.masses();
        out["cumulative"] = d.cumulative();
        out["mid"] = d.mid();
        return out;
    }, py::arg("values"), "Empirical distribution: atoms, masses, F and Fmid");

    m.def("score_table", [](const std::vector<double>& values, std::size_t m_) {
        auto d = std::make_shared<const DiscreteDist>(empirical_dist(Sample{values}));
        auto b = build_scores(d, m_);
        return from_matrix(b.table());
    }, py::arg("values"), py::arg("m") = 4,
       "Orthonormal score function values T_j(atom_i), rows j = 1..m");

    m.def("legendre", &lpstat::legendre, py::arg("j"), py::arg("u"),
          "Shifted orthonormal Legendre polynomial on [0,1]");

    m.def("lp_moments", [](const std::vector<double>& values, std::size_t m_) {
        auto mv = lp_moments(Sample{values}, m_);
        py::dict out;
        out["lp"] = mv.coeffs;
        out["mean"] = mv.mean;
        out["var"] = mv.var;
        out["n"] = values.size();
        return out;
    }, py::arg("values"), py::arg("m") = 4);

    m.def("population_lp_moments", &population_lp_moments_named, py::arg("name"),
          py::arg("m") = 6,
          "Population LP moments of uniform/normal/t2/chisq4/poisson2/geometric02");

    m.def("lp_comoments", [](const std::vector<double>& x, const std::vector<double>& y,
                             std::size_t m_, const std::string& select, double effect_cutoff) {
        return comoments_dict(lp_comoments(PairedSample{x, y}, m_,
                                           selection_from(select, effect_cutoff)));
    }, py::arg("x"), py::arg("y"), py::arg("m") = 4, py::arg("select") = "threshold",
       py::arg("effect_cutoff") = 0.1);

    m.def("lp_comoments_table", [](const std::vector<std::vector<double>>& table, std::size_t m_,
                                   const std::string& select, double effect_cutoff,
                                   std::optional<double> n) {
        ContingencyTable t(to_matrix(table), {}, {}, n);
        return comoments_dict(lp_comoments(t, m_, selection_from(select, effect_cutoff)));
    }, py::arg("table"), py::arg("m") = 4, py::arg("select") = "threshold",
       py::arg("effect_cutoff") = 0.1, py::arg("n") = std::nullopt);

    m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) {
        return spearman_lp11(PairedSample{x, y});
    }, py::arg("x"), py::arg("y"), "Ties-corrected rank correlation LP[1,1]");

    m.def("gaussian_lpinfor", &gaussian_lpinfor, py::arg("rho"));

    m.def("chidiv", [](const std::vector<std::vector<double>>& table) {
        return chidiv(ContingencyTable(to_matrix(table)));
    }, py::arg("table"), "Chi-square divergence chi^2/n of a two-way table");

    auto infor_dict = [](const LPInforResult& r) {
        py::dict out;
        out["raw"] = r.raw;
        out["smooth"] = r.smooth;
        out["df_raw"] = r.df_raw;
        out["df_smooth"] = r.df_smooth;
        if (r.linearity) out["linearity"] = *r.linearity;
        if (r.pvalue) {
            out["pvalue"] = *r.pvalue;
            out["seed"] = r.seed;
            out["permutations"] = r.permutations;
        }
        return out;
    };

    m.def("lpinfor", [infor_dict](const std::vector<double>& x, const std::vector<double>& y,
                                  std::size_t m_, const std::string& select, double effect_cutoff,
                                  std::size_t perm, std::uint64_t seed, std::size_t threads) {
        LpinforOptions opt;
        opt.m = m_;
        opt.selection = selection_from(select, effect_cutoff);
        opt.permutations = perm;
        opt.seed = seed;
        opt.threads = threads;
        return infor_dict(lpinfor(PairedSample{x, y}, opt));
    }, py::arg("x"), py::arg("y"), py::arg("m") = 4, py::arg("select") = "threshold",
       py::arg("effect_cutoff") = 0.1, py::arg("perm") = 0, py::arg("seed") = 1,
       py::arg("threads") = 1);

    m.def("lpinfor_table", [infor_dict](const std::vector<std::vector<double>>& table,
                                        std::size_t m_, const std::string& select,
                                        double effect_cutoff, std::optional<double> n) {
        LpinforOptions opt;
        opt.m = m_;
        opt.selection = selection_from(select, effect_cutoff);
        ContingencyTable t(to_matrix(table), {}, {}, n);
        return infor_dict(lpinfor(t, opt));
    }, py::arg("table"), py::arg("m") = 4, py::arg("select") = "threshold",
       py::arg("effect_cutoff") = 0.1, py::arg("n") = std::nullopt);

    m.def("gof", [](const std::vector<double>& values, const std::string& baseline,
                    const std::vector<double>& params, bool fit, std::size_t m_,
                    const std::string& select) {
        Sample s{values};
        auto g = baseline_from(baseline, params, fit ? values : std::vector<double>{});
        auto coeffs = gof_components(s, g, m_);
        auto sel = select_components(coeffs, static_cast<double>(s.n()),
                                     selection_from(select, 0.1));
        auto stat = gof_statistic(coeffs, sel);
        py::dict out;
        out["coeffs"] = coeffs;
        std::vector<std::size_t> orders;
        for (auto i : sel) orders.push_back(i + 1);
        out["selected"] = orders;
        out["raw"] = stat.raw;
        out["smooth"] = stat.smooth;
        out["df_smooth"] = stat.df_smooth;
        return out;
    }, py::arg("values"), py::arg("baseline"), py::arg("params") = std::vector<double>{},
       py::arg("fit") = false, py::arg("m") = 4, py::arg("select") = "aic");

    m.def("skew_density", [](const std::vector<double>& values, const std::string& baseline,
                             const std::vector<double>& params, bool fit, std::size_t m_,
                             const std::string& select, const std::vector<double>& at) {
        Sample s{values};
        auto g = baseline_from(baseline, params, fit ? values : std::vector<double>{});
        auto coeffs = gof_components(s, g, m_);
        auto sel = select_components(coeffs, static_cast<double>(s.n()),
                                     selection_from(select, 0.1));
        auto cd = fit_l2(g, coeffs, sel, static_cast<double>(s.n()));
        std::vector<double> out(at.size());
        for (std::size_t i = 0; i < at.size(); ++i) out[i] = lp_skew_density(cd, at[i]);
        return out;
    }, py::arg("values"), py::arg("baseline"), py::arg("params") = std::vector<double>{},
       py::arg("fit") = true, py::arg("m") = 4, py::arg("select") = "aic",
       py::arg("at") = std::vector<double>{});

    m.def("copula_density_grid", [](const std::vector<double>& x, const std::vector<double>& y,
                                    std::size_t m_, const std::string& form, std::size_t res) {
        auto cm = lp_comoments(PairedSample{x, y}, m_);
        CopulaModel model;
        if (form == "canonical")
            model = fit_canonical_copula(cm, std::min(cm.m1(), cm.m2()));
        else if (form == "exp")
            model = fit_exponential_copula(cm, flagged_selection(cm));
        else
            model = fit_l2_copula(cm, full_selection(cm));
        std::vector<std::vector<double>> grid(res, std::vector<double>(res));
        for (std::size_t i = 0; i < res; ++i)
            for (std::size_t j = 0; j < res; ++j)
                grid[i][j] = model.density((i + 0.5) / res, (j + 0.5) / res);
        return grid;
    }, py::arg("x"), py::arg("y"), py::arg("m") = 4, py::arg("form") = "l2",
       py::arg("res") = 101);

    m.def("canonical_singular_values", [](const std::vector<std::vector<double>>& table,
                                          std::size_t m_) {
        ContingencyTable t(to_matrix(table));
        auto cm = lp_comoments(t, m_);
        return fit_canonical_copula(cm, std::min(cm.m1(), cm.m2())).singular_values();
    }, py::arg("table"), py::arg("m") = 4);

    m.def("correspondence", [](const std::vector<std::vector<double>>& table, std::size_t rank,
                               const std::string& variant) {
        ContingencyTable t(to_matrix(table));
        auto res = correspondence_analysis(t, rank,
                                           variant == "goodman" ? CorrespondenceVariant::Goodman
                                                                : CorrespondenceVariant::CA);
        py::dict out;
        out["row_coords"] = from_matrix(res.row_coords);
        out["col_coords"] = from_matrix(res.col_coords);
        out["singular_values"] = res.singular_values;
        out["inertia_share"] = res.inertia_share;
        return out;
    }, py::arg("table"), py::arg("rank") = 2, py::arg("variant") = "ca");

    m.def("two_by_two", [](const std::vector<std::vector<double>>& table) {
        auto r = two_by_two_identities(ContingencyTable(to_matrix(table)));
        py::dict out;
        out["lambda1"] = r.lambda1;
        out["abs_phi"] = r.abs_phi;
        if (r.gamma1) out["gamma1"] = *r.gamma1;
        if (r.log_odds_form) out["log_odds_form"] = *r.log_odds_form;
        return out;
    }, py::arg("table"));

    m.def("conditional_mean_curve", [](const std::vector<double>& x, const std::vector<double>& y,
                                       const std::vector<double>& at, std::size_t m_) {
        auto model = fit_conditional(PairedSample{x, y}, m_);
        std::vector<double> out(at.size());
        for (std::size_t i = 0; i < at.size(); ++i) out[i] = conditional_mean(model, at[i]);
        return out;
    }, py::arg("x"), py::arg("y"), py::arg("at"), py::arg("m") = 4);

    m.def("conditional_quantiles", [](const std::vector<double>& x, const std::vector<double>& y,
                                      double u, const std::vector<double>& vs, std::size_t m_,
                                      const std::string& path, std::uint64_t seed) {
        auto model = fit_conditional(PairedSample{x, y}, m_);
        QuantileOptions opt;
        opt.path = path == "sample" ? QuantilePath::Sample : QuantilePath::Invert;
        opt.seed = seed;
        std::vector<double> out(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i)
            out[i] = conditional_quantile(model, u, vs[i], opt);
        return out;
    }, py::arg("x"), py::arg("y"), py::arg("u"), py::arg("vs"), py::arg("m") = 4,
       py::arg("path") = "invert", py::arg("seed") = 1);

    m.def("permutation_pvalue", [](const std::vector<double>& x, const std::vector<double>& y,
                                   std::size_t m_, std::size_t replicates, std::uint64_t seed,
                                   std::size_t threads) {
        PermutationTest cfg;
        cfg.m = m_;
        cfg.replicates = replicates;
        cfg.seed = seed;
        cfg.threads = threads;
        auto r = permutation_pvalue(PairedSample{x, y}, cfg);
        py::dict out;
        out["observed"] = r.observed;
        out["pvalue"] = r.pvalue;
        out["seed"] = r.seed;
        out["replicates"] = r.replicates;
        return out;
    }, py::arg("x"), py::arg("y"), py::arg("m") = 4, py::arg("replicates") = 999,
       py::arg("seed") = 1, py::arg("threads") = 1);

    m.def("generate_scenario", [](const std::string& pattern, const std::string& noise,
                                  double level, std::size_t n, std::uint64_t seed) {
        Scenario sc;
        sc.pattern = pattern_from_string(pattern);
        sc.noise = noise_from_string(noise);
        sc.level = level;
        sc.n = n;
        sc.seed = seed;
        auto s = generate_scenario(sc);
        return py::make_tuple(s.x, s.y);
    }, py::arg("pattern"), py::arg("noise") = "e1", py::arg("level") = 1.0, py::arg("n") = 300,
       py::arg("seed") = 1);
}
