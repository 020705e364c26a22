#include "opvar/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opvar/dependence.hpp"
#include "opvar/errors.hpp"
#include "opvar/monte_carlo.hpp"

namespace opvar {

namespace {

bool needs_var_s(RegimeKind kind) {
    return kind == RegimeKind::equal_tails ||
           kind == RegimeKind::mirror_power_diff ||
           kind == RegimeKind::mirror_expected_loss;
}

bool is_mirror(RegimeKind kind) {
    return kind == RegimeKind::mirror_power_diff ||
           kind == RegimeKind::mirror_expected_loss;
}

void fill_approximation(SensitivityReport& rep, const RiskPair& pair) {
    ApproxInputs in;
    in.var_L = rep.var_L;
    in.var_S = rep.var_S;
    if (rep.regime.kind == RegimeKind::expected_loss)
        in.expected_loss = expected_loss(pair.cell_S);
    else if (rep.regime.kind == RegimeKind::mirror_expected_loss)
        in.expected_loss = expected_loss(pair.cell_L);

    const double term =
        approx_delta_var(rep.regime, TailRatioConstant{rep.k}, in);
    if (is_mirror(rep.regime.kind)) {
        rep.mirror_convention = true;
        rep.approx = *rep.var_S + term;
        rep.error = rep.approx / rep.var_LS - 1.0;
    } else {
        rep.approx = term;
        if (rep.delta_var > 0.0) {
            rep.error = rep.approx / rep.delta_var - 1.0;
        } else {
            rep.error = std::numeric_limits<double>::quiet_NaN();
            if (!rep.warning.empty()) rep.warning += "; ";
            rep.warning += "delta_var is not positive; error undefined";
        }
    }
}

} // namespace

SensitivityReport analyze(const RiskPair& pair, double alpha,
                          const EngineConfig& cfg, const AnalyzeHints* hints) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("analyze: alpha must lie in (0, 1)");
    cfg.validate();

    SensitivityReport rep;
    rep.alpha = alpha;
    rep.regime = classify_regime(pair.cell_L.tail_index(), pair.cell_S.tail_index());
    rep.k = tail_ratio_constant(pair.cell_L, pair.cell_S).value;

    const bool monte_carlo_route =
        pair.dependence == DependenceKind::scale_mixture ||
        cfg.engine_kind == EngineKind::monte_carlo;
    rep.engine = monte_carlo_route ? EngineKind::monte_carlo : cfg.engine_kind;
    if (pair.dependence == DependenceKind::scale_mixture &&
        cfg.engine_kind != EngineKind::monte_carlo)
        rep.warning = "scale_mixture pair routed to Monte Carlo";

    try {
        if (monte_carlo_route) {
            // Common samples: the quantile difference of coupled draws is
            // far less noisy than two independent runs.
            const PairSample sample = sample_pair(pair, cfg.mc_samples, cfg.mc_seed);
            std::vector<double> work(sample.l);
            VarEstimate v_l = quantile_with_ci(work, alpha);
            for (std::size_t i = 0; i < work.size(); ++i)
                work[i] = sample.l[i] + sample.s[i];
            VarEstimate v_ls = quantile_with_ci(work, alpha);
            rep.var_L = v_l.value;
            rep.var_LS = v_ls.value;
            rep.ci_halfwidth = std::max(v_l.ci_halfwidth, v_ls.ci_halfwidth);
            if (needs_var_s(rep.regime.kind)) {
                work = sample.s;
                rep.var_S = quantile_with_ci(work, alpha).value;
            }
        } else {
            std::vector<CompoundCell> both{pair.cell_L, pair.cell_S};
            VarEstimate v_l = (hints && hints->var_L)
                                  ? *hints->var_L
                                  : var(alpha, {pair.cell_L}, cfg);
            VarEstimate v_ls = var(alpha, both, cfg);
            rep.var_L = v_l.value;
            rep.var_LS = v_ls.value;
            rep.achieved_tol =
                std::max(v_l.diagnostics.achieved_tol, v_ls.diagnostics.achieved_tol);
            if (!v_ls.diagnostics.warning.empty()) rep.warning = v_ls.diagnostics.warning;
            if (needs_var_s(rep.regime.kind))
                rep.var_S = var(alpha, {pair.cell_S}, cfg).value;
        }
        rep.delta_var = rep.var_LS - rep.var_L;
        fill_approximation(rep, pair);
    } catch (const AccuracyError& e) {
        rep.failed = true;
        rep.warning = e.what();
    } catch (const TruncationError& e) {
        rep.failed = true;
        rep.warning = e.what();
    }
    return rep;
}

std::vector<SensitivityReport> sweep_alpha(const RiskPair& pair,
                                           const std::vector<double>& alpha_grid,
                                           const EngineConfig& cfg) {
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        if (!(alpha_grid[i] > 0.0 && alpha_grid[i] < 1.0))
            throw std::domain_error("sweep_alpha: levels must lie in (0, 1)");
        if (i > 0 && !(alpha_grid[i] > alpha_grid[i - 1]))
            throw std::domain_error("sweep_alpha: grid must be strictly increasing");
    }
    std::vector<SensitivityReport> out;
    out.reserve(alpha_grid.size());
    for (double a : alpha_grid) out.push_back(analyze(pair, a, cfg));
    return out;
}

} // namespace opvar
