#include "opvar/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "opvar/inversion.hpp"
#include "opvar/numerics.hpp"

namespace opvar {

std::string to_string(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::expected_loss: return "expected_loss";
        case RegimeKind::power_diff: return "power_diff";
        case RegimeKind::equal_tails: return "equal_tails";
        case RegimeKind::mirror_power_diff: return "mirror_power_diff";
        case RegimeKind::mirror_expected_loss: return "mirror_expected_loss";
    }
    return "unknown";
}

TailRatioConstant tail_ratio_constant(const CompoundCell& cell_L,
                                      const CompoundCell& cell_S) {
    const GpdSeverity& l = cell_L.severity;
    const GpdSeverity& s = cell_S.severity;
    const double value = cell_S.frequency.lambda / cell_L.frequency.lambda *
                         std::pow(s.sigma / s.xi, 1.0 / s.xi) *
                         std::pow(l.sigma / l.xi, -1.0 / l.xi);
    return {value};
}

Regime classify_regime(double beta, double gamma, double eq_tol) {
    if (!(beta > 0.0) || !(gamma > 0.0))
        throw std::domain_error("classify_regime: beta, gamma must be > 0");
    const double scale = std::max(beta, gamma);
    if (std::abs(beta - gamma) <= eq_tol * scale)
        return {RegimeKind::equal_tails, beta, gamma};
    if (beta < gamma) {
        if (gamma <= beta + 1.0 + eq_tol * std::max(gamma, beta + 1.0))
            return {RegimeKind::power_diff, beta, gamma};
        return {RegimeKind::expected_loss, beta, gamma};
    }
    if (beta <= gamma + 1.0 + eq_tol * std::max(beta, gamma + 1.0))
        return {RegimeKind::mirror_power_diff, beta, gamma};
    return {RegimeKind::mirror_expected_loss, beta, gamma};
}

double approx_delta_var(const Regime& regime, const TailRatioConstant& k,
                        const ApproxInputs& in) {
    switch (regime.kind) {
        case RegimeKind::expected_loss:
        case RegimeKind::mirror_expected_loss:
            if (!in.expected_loss)
                throw std::domain_error(
                    "approx_delta_var: expected-loss regime needs a finite expected loss");
            return *in.expected_loss;
        case RegimeKind::power_diff:
            if (!in.var_L)
                throw std::domain_error("approx_delta_var: power_diff needs var_L");
            return k.value / regime.beta *
                   std::pow(*in.var_L, regime.beta + 1.0 - regime.gamma);
        case RegimeKind::equal_tails:
            if (!in.var_L)
                throw std::domain_error("approx_delta_var: equal_tails needs var_L");
            return std::expm1(std::log1p(k.value) / regime.beta) * *in.var_L;
        case RegimeKind::mirror_power_diff:
            if (!in.var_S)
                throw std::domain_error("approx_delta_var: mirror_power_diff needs var_S");
            if (!(k.value > 0.0))
                throw std::domain_error("approx_delta_var: mirror_power_diff needs k > 0");
            return std::pow(*in.var_S, regime.gamma + 1.0 - regime.beta) /
                   (k.value * regime.gamma);
    }
    throw std::logic_error("approx_delta_var: unknown regime");
}

double single_loss_var(double alpha, const CompoundCell& cell) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("single_loss_var: alpha must lie in (0, 1)");
    if (!(1.0 - alpha < cell.frequency.lambda))
        throw std::domain_error("single_loss_var: needs 1 - alpha < lambda");
    const GpdSeverity& d = cell.severity;
    return d.sigma / d.xi *
           (std::pow(cell.frequency.lambda / (1.0 - alpha), d.xi) - 1.0);
}

double asymptotic_sum_var(double alpha, const CompoundCell& cell_L,
                          const CompoundCell& cell_S, const EngineConfig& cfg,
                          double eq_tol) {
    const Regime regime =
        classify_regime(cell_L.tail_index(), cell_S.tail_index(), eq_tol);
    if (regime.kind == RegimeKind::expected_loss ||
        regime.kind == RegimeKind::power_diff)
        return CfInversionEngine({cell_L}, cfg).var(alpha).value;
    if (regime.kind == RegimeKind::mirror_power_diff ||
        regime.kind == RegimeKind::mirror_expected_loss)
        return CfInversionEngine({cell_S}, cfg).var(alpha).value;

    // Tied indices: quantile of the equal-weight mixture (F_L + F_S)/2 at
    // the level 1 - (1-alpha)/2.
    const double level = 1.0 - 0.5 * (1.0 - alpha);
    const CfInversionEngine eng_L({cell_L}, cfg);
    const CfInversionEngine eng_S({cell_S}, cfg);
    const auto mixture_gap = [&](double x) {
        return 0.5 * (eng_L.cdf(x) + eng_S.cdf(x)) - level;
    };
    double seed = 0.5 * (single_loss_var(level, cell_L) +
                         single_loss_var(level, cell_S));
    double lo = 0.2 * seed, hi = 5.0 * seed;
    double flo = mixture_gap(lo), fhi = mixture_gap(hi);
    for (int i = 0; i < 80 && flo > 0.0; ++i) { hi = lo; fhi = flo; lo *= 0.2; flo = mixture_gap(lo); }
    for (int i = 0; i < 80 && fhi < 0.0; ++i) { lo = hi; flo = fhi; hi *= 5.0; fhi = mixture_gap(hi); }
    return brent(mixture_gap, lo, hi, 1e-11, 0.0, 0.0, 240).x;
}

TailTransferResult transformed_tail_var(double alpha, double lambda_scale,
                                        const CompoundCell& cell_Y, double ratio,
                                        const EngineConfig& cfg) {
    if (!(lambda_scale > 0.0))
        throw std::domain_error("transformed_tail_var: lambda_scale must be > 0");
    const double shifted = 1.0 - (1.0 - alpha) / lambda_scale;
    if (!(shifted > 0.0 && shifted < 1.0))
        throw std::domain_error("transformed_tail_var: adjusted level outside (0, 1)");

    const CfInversionEngine engine({cell_Y}, cfg);
    TailTransferResult out;
    out.level_shift_form = std::pow(engine.var(shifted).value, ratio);
    const double gamma = cell_Y.tail_index();
    out.scale_form =
        std::pow(lambda_scale, ratio / gamma) * std::pow(engine.var(alpha).value, ratio);
    return out;
}

double conservative_bound(double l, double beta, double var_L_at_1mp,
                          double var_L_at_alpha) {
    if (!(l > 0.0) || !(beta > 0.0))
        throw std::domain_error("conservative_bound: l, beta must be > 0");
    if (!(var_L_at_1mp >= l))
        throw std::domain_error("conservative_bound: requires var_L_at_1mp >= l");
    return std::pow(l / var_L_at_1mp, beta) * var_L_at_alpha / beta;
}

double mirror_var_substitute(const TailRatioConstant& k, double beta,
                             double gamma, double var_L) {
    if (!(k.value > 0.0))
        throw std::domain_error("mirror_var_substitute: k must be > 0");
    return std::pow(k.value, 1.0 / gamma) * std::pow(var_L, beta / gamma);
}

} // namespace opvar
