#pragma once

#include <optional>
#include <string>

#include "opvar/distributions.hpp"
#include "opvar/engine.hpp"

namespace opvar {

/// The five tail-order regimes for a prior loss with tail index beta and an
/// add-on with tail index gamma. Approximations of the VaR shift change
/// discontinuously across them:
///   expected_loss         beta + 1 < gamma   (add-on acts through its mean)
///   power_diff            beta < gamma <= beta + 1
///   equal_tails           beta = gamma
///   mirror_power_diff     gamma < beta <= gamma + 1
///   mirror_expected_loss  gamma + 1 < beta
/// Mirror regimes swap the roles: the add-on dominates and the comparison
/// anchor becomes VaR(S).
enum class RegimeKind {
    expected_loss,
    power_diff,
    equal_tails,
    mirror_power_diff,
    mirror_expected_loss
};

std::string to_string(RegimeKind kind);

struct Regime {
    RegimeKind kind;
    double beta;
    double gamma;
};

/// Limit constant of x^(gamma-beta) * sf_S(x) / sf_L(x) for GPD/Poisson
/// cells: (lambda_S/lambda_L) (sigma_S/xi_S)^(1/xi_S) (sigma_L/xi_L)^(-1/xi_L).
struct TailRatioConstant {
    double value;
};

TailRatioConstant tail_ratio_constant(const CompoundCell& cell_L,
                                      const CompoundCell& cell_S);

/// Total classification. Ties within eq_tol (relative) resolve to
/// equal_tails; the boundaries gamma = beta+1 / beta = gamma+1 belong to the
/// power_diff / mirror_power_diff regimes (closed inequalities). eq_tol is
/// deliberately tiny: the regimes are analytically discontinuous, so callers
/// must opt in to treating nearly equal indices as equal.
Regime classify_regime(double beta, double gamma, double eq_tol = 1e-9);

struct ApproxInputs {
    std::optional<double> var_L;           // equal_tails / power_diff
    std::optional<double> var_S;           // mirror_power_diff
    std::optional<double> expected_loss;   // E[S] or E[L] for the EL regimes
};

/// Asymptotic approximation of the VaR shift for the regime:
///   expected_loss:        E[S]
///   power_diff:           (k/beta) * var_L^(beta+1-gamma)
///   equal_tails:          ((1+k)^(1/beta) - 1) * var_L   (difference form)
///   mirror_power_diff:    (1/(k*gamma)) * var_S^(gamma+1-beta)
///   mirror_expected_loss: E[L]
/// Mirror values approximate VaR(L+S) - VaR(S); the others VaR(L+S) - VaR(L).
double approx_delta_var(const Regime& regime, const TailRatioConstant& k,
                        const ApproxInputs& in);

/// Closed-form quantile of the single-loss tail approximation
/// sf(x) ~ lambda * gpd_sf(x): (sigma/xi)((lambda/(1-alpha))^xi - 1).
double single_loss_var(double alpha, const CompoundCell& cell);

/// Leading-order VaR of the sum of two independent cells: the fatter cell's
/// VaR when the indices differ, and the 1-(1-alpha)/2 quantile of the
/// equal-weight CDF mixture when they tie.
double asymptotic_sum_var(double alpha, const CompoundCell& cell_L,
                          const CompoundCell& cell_S, const EngineConfig& cfg,
                          double eq_tol = 1e-9);

/// VaR transfer between tails linked by sf_X(x) ~ lambda_scale *
/// sf_Y(x^(beta/gamma)): level-shift form var(1-(1-alpha)/lambda_scale, Y)^ratio
/// and the companion scale form lambda_scale^(ratio/gamma) * var(alpha, Y)^ratio,
/// with ratio = gamma/beta.
struct TailTransferResult {
    double level_shift_form;
    double scale_form;
};

TailTransferResult transformed_tail_var(double alpha, double lambda_scale,
                                        const CompoundCell& cell_Y, double ratio,
                                        const EngineConfig& cfg);

/// Conservative add-on capital bound (1/beta)(l / var_L_at_1mp)^beta *
/// var_L_at_alpha, valid whenever var_L_at_1mp >= l. Dominates the
/// power_diff approximation with exponent gamma >= beta.
double conservative_bound(double l, double beta, double var_L_at_1mp,
                          double var_L_at_alpha);

/// Mirror-regime substitute for VaR(S): k^(1/gamma) * var_L^(beta/gamma),
/// valid when the scaled tail limits exist (they do for GPD/Poisson cells).
double mirror_var_substitute(const TailRatioConstant& k, double beta,
                             double gamma, double var_L);

} // namespace opvar
