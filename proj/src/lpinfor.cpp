#include "lpstat/lpinfor.hpp"

#include <cmath>
#include <thread>

#include "lpstat/errors.hpp"
#include "lpstat/rng.hpp"
#include "lpstat/score_basis.hpp"

namespace lpstat {

LPInforResult lpinfor(const LPComomentMatrix& cm, const SelectionOptions& selection) {
    LPInforResult out;
    out.rule = selection.rule;
    out.raw = cm.sum_squares();
    out.df_raw = cm.entries.data().size();
    auto sel = select_components(cm.entries.data(), cm.n, selection);
    bool has11 = false;
    for (auto idx : sel) {
        const double c = cm.entries.data()[idx];
        out.smooth += c * c;
        if (idx == 0) has11 = true;
    }
    out.df_smooth = sel.size();
    if (has11 && out.smooth > 0.0)
        out.linearity = cm.entries(0, 0) * cm.entries(0, 0) / out.smooth;
    return out;
}

LPInforResult lpinfor(const PairedSample& s, const LpinforOptions& opt) {
    auto cm = lp_comoments(s, opt.m, opt.selection);
    auto out = lpinfor(cm, opt.selection);
    if (opt.permutations > 0) {
        PermutationTest cfg;
        cfg.statistic = TestStatistic::LpinforRaw;
        cfg.m = opt.m;
        cfg.selection = opt.selection;
        cfg.replicates = opt.permutations;
        cfg.seed = opt.seed;
        cfg.threads = opt.threads;
        auto pr = permutation_pvalue(s, cfg);
        out.pvalue = pr.pvalue;
        out.seed = opt.seed;
        out.permutations = opt.permutations;
    }
    return out;
}

LPInforResult lpinfor(const ContingencyTable& t, const LpinforOptions& opt) {
    auto cm = lp_comoments(t, opt.m, opt.selection);
    auto out = lpinfor(cm, opt.selection);
    if (opt.permutations > 0) {
        PermutationTest cfg;
        cfg.statistic = TestStatistic::LpinforRaw;
        cfg.m = opt.m;
        cfg.selection = opt.selection;
        cfg.replicates = opt.permutations;
        cfg.seed = opt.seed;
        cfg.threads = opt.threads;
        auto pr = permutation_pvalue(t, cfg);
        out.pvalue = pr.pvalue;
        out.seed = opt.seed;
        out.permutations = opt.permutations;
    }
    return out;
}

double gaussian_lpinfor(double rho) {
    if (!(std::abs(rho) < 1.0)) throw DataError("|rho| must be below 1");
    return rho * rho / (1.0 - rho * rho);
}

double chidiv(const ContingencyTable& t) {
    auto [dx, dy] = table_margins(t);
    const Matrix& P = t.probs();
    double acc = 0.0;
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t j = 0; j < P.cols(); ++j) {
            const double indep = dx.masses()[i] * dy.masses()[j];
            const double ratio = P(i, j) / indep;
            acc += indep * (ratio - 1.0) * (ratio - 1.0);
        }
    return acc;
}

PairedSample table_to_pairs(const ContingencyTable& t) {
    if (!t.n()) throw DataError("permutation test requires a count table");
    const double n = *t.n();
    const Matrix& P = t.probs();
    PairedSample s;
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t j = 0; j < P.cols(); ++j) {
            const double cnt = P(i, j) * n;
            const auto c = static_cast<std::size_t>(std::llround(cnt));
            if (std::abs(cnt - static_cast<double>(c)) > 1e-6)
                throw DataError("table entries are not integer counts");
            for (std::size_t r = 0; r < c; ++r) {
                s.x.push_back(static_cast<double>(i));
                s.y.push_back(static_cast<double>(j));
            }
        }
    return s;
}

namespace {

struct PermutationContext {
    Matrix tx, ty;              // n x m score rows
    std::vector<double> x, y;   // centered raw values (Pearson)
    std::vector<double> rx, ry; // midranks (Spearman)
};

double eval_statistic(const PermutationContext& ctx, const PermutationTest& cfg,
                      const std::vector<std::size_t>& perm, std::optional<double> n_for_sel) {
    const std::size_t n = perm.size();
    switch (cfg.statistic) {
        case TestStatistic::AbsEntry: {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                acc += ctx.tx(i, cfg.entry_j - 1) * ctx.ty(perm[i], cfg.entry_k - 1);
            return std::abs(acc / static_cast<double>(n));
        }
        case TestStatistic::AbsPearson:
        case TestStatistic::AbsSpearman: {
            const auto& a = cfg.statistic == TestStatistic::AbsPearson ? ctx.x : ctx.rx;
            const auto& b = cfg.statistic == TestStatistic::AbsPearson ? ctx.y : ctx.ry;
            double sab = 0.0, saa = 0.0, sbb = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sab += a[i] * b[perm[i]];
                saa += a[i] * a[i];
                sbb += b[i] * b[i];
            }
            if (saa == 0.0 || sbb == 0.0) return 0.0;
            return std::abs(sab / std::sqrt(saa * sbb));
        }
        case TestStatistic::LpinforRaw:
        case TestStatistic::LpinforSmooth: {
            const std::size_t m1 = ctx.tx.cols(), m2 = ctx.ty.cols();
            Matrix e(m1, m2);
            for (std::size_t i = 0; i < n; ++i) {
                const auto xi = ctx.tx.row(i);
                const auto yi = ctx.ty.row(perm[i]);
                for (std::size_t j = 0; j < m1; ++j) {
                    const double t = xi[j];
                    for (std::size_t k = 0; k < m2; ++k) e(j, k) += t * yi[k];
                }
            }
            for (double& v : e.data()) v /= static_cast<double>(n);
            if (cfg.statistic == TestStatistic::LpinforRaw) {
                double acc = 0.0;
                for (double v : e.data()) acc += v * v;
                return acc;
            }
            auto sel = select_components(e.data(), n_for_sel, cfg.selection);
            double acc = 0.0;
            for (auto idx : sel) acc += e.data()[idx] * e.data()[idx];
            return acc;
        }
    }
    return 0.0;
}

std::vector<double> midranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double mid = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t t = i; t <= j; ++t) r[order[t]] = mid;
        i = j + 1;
    }
    const double c = 0.5 * (static_cast<double>(n) + 1.0);
    for (double& x : r) x -= c;
    return r;
}

}  // namespace

PermutationResult permutation_pvalue(const PairedSample& s, const PermutationTest& cfg) {
    if (cfg.replicates < 99) throw DataError("need at least 99 permutation replicates");
    const std::size_t n = s.n();
    if (n < 2) throw DataError("need at least two pairs");

    auto cm = lp_comoments(s, cfg.m, cfg.selection);
    PermutationContext ctx;
    const std::size_t m1 = cm.m1(), m2 = cm.m2();
    ctx.tx = Matrix(n, m1);
    ctx.ty = Matrix(n, m2);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ix = *cm.basis_x->dist().atom_index(s.x[i]);
        const auto iy = *cm.basis_y->dist().atom_index(s.y[i]);
        for (std::size_t j = 0; j < m1; ++j) ctx.tx(i, j) = cm.basis_x->at(j + 1, ix);
        for (std::size_t k = 0; k < m2; ++k) ctx.ty(i, k) = cm.basis_y->at(k + 1, iy);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += s.x[i];
        my += s.y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    ctx.x.resize(n);
    ctx.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        ctx.x[i] = s.x[i] - mx;
        ctx.y[i] = s.y[i] - my;
    }
    ctx.rx = midranks(s.x);
    ctx.ry = midranks(s.y);

    std::vector<std::size_t> identity(n);
    for (std::size_t i = 0; i < n; ++i) identity[i] = i;
    const double observed = eval_statistic(ctx, cfg, identity, cm.n);

    const std::size_t threads = std::max<std::size_t>(1, cfg.threads);
    std::vector<std::size_t> exceed(threads, 0);
    auto worker = [&](std::size_t tid) {
        std::vector<std::size_t> perm(n);
        for (std::size_t b = tid; b < cfg.replicates; b += threads) {
            Rng rng = Rng::substream(cfg.seed, b);
            for (std::size_t i = 0; i < n; ++i) perm[i] = i;
            rng.shuffle(perm);
            if (eval_statistic(ctx, cfg, perm, cm.n) >= observed) ++exceed[tid];
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    std::size_t total = 0;
    for (auto c : exceed) total += c;

    PermutationResult out;
    out.observed = observed;
    out.pvalue = (1.0 + static_cast<double>(total)) / (static_cast<double>(cfg.replicates) + 1.0);
    out.seed = cfg.seed;
    out.replicates = cfg.replicates;
    return out;
}

PermutationResult permutation_pvalue(const ContingencyTable& t, const PermutationTest& cfg) {
    return permutation_pvalue(table_to_pairs(t), cfg);
}

ConditionalCurve conditional_lpinfor(const LPComomentMatrix& cm,
                                     const std::vector<double>& u_grid) {
    ConditionalCurve out;
    out.u = u_grid;
    out.components = Matrix(u_grid.size(), cm.m2());
    out.value.resize(u_grid.size());
    for (std::size_t g = 0; g < u_grid.size(); ++g) {
        double total = 0.0;
        for (std::size_t k = 0; k < cm.m2(); ++k) {
            double c = 0.0;
            for (std::size_t j = 0; j < cm.m1(); ++j)
                c += cm.entries(j, k) * unit_score(*cm.basis_x, j + 1, u_grid[g]);
            out.components(g, k) = c;
            total += c * c;
        }
        out.value[g] = total;
    }
    return out;
}

double conditional_lpinfor_mixture(const LPComomentMatrix& cm) {
    const auto& dx = cm.basis_x->dist();
    double acc = 0.0;
    for (std::size_t i = 0; i < dx.size(); ++i) {
        double cell = 0.0;
        for (std::size_t k = 0; k < cm.m2(); ++k) {
            double c = 0.0;
            for (std::size_t j = 0; j < cm.m1(); ++j)
                c += cm.entries(j, k) * cm.basis_x->at(j + 1, i);
            cell += c * c;
        }
        acc += dx.masses()[i] * cell;
    }
    return acc;
}

}  // namespace lpstat
