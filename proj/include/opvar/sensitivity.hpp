#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opvar/asymptotics.hpp"
#include "opvar/engine.hpp"
#include "opvar/risk_pair.hpp"

namespace opvar {

/// Full sensitivity record for one confidence level: exact prior/posterior
/// VaR, the regime's closed-form approximation, and the relative error.
/// For the mirror regimes the approximation targets VaR(L+S) (anchored at
/// VaR(S) plus the regime term) and error compares against var_LS; otherwise
/// approx targets delta_var = var_LS - var_L.
struct SensitivityReport {
    double alpha = 0.0;
    double var_L = 0.0;
    double var_LS = 0.0;
    std::optional<double> var_S;
    double delta_var = 0.0;
    double approx = 0.0;
    double error = 0.0;
    bool mirror_convention = false;  // error measured against var_LS
    Regime regime{RegimeKind::equal_tails, 0.0, 0.0};
    double k = 0.0;
    EngineKind engine = EngineKind::cf_inversion;
    double achieved_tol = 0.0;
    double ci_halfwidth = 0.0;       // widest VaR CI (Monte Carlo only)
    std::string warning;             // empty when clean
    bool failed = false;             // true when the engine gave up
};

/// Reusable knowns for sweeps over a shared cell_L (saves the repeated
/// prior-VaR inversions).
struct AnalyzeHints {
    std::optional<VarEstimate> var_L;
};

/// One full analysis at level alpha. Independent pairs run on the engine
/// selected in cfg; scale-mixture pairs always route to Monte Carlo with
/// common samples for both quantiles. var_S is evaluated for the
/// equal-tails and mirror regimes only.
SensitivityReport analyze(const RiskPair& pair, double alpha,
                          const EngineConfig& cfg,
                          const AnalyzeHints* hints = nullptr);

/// analyze() across a strictly increasing grid; per-point engine failures
/// are flagged in the report and the sweep continues.
std::vector<SensitivityReport> sweep_alpha(const RiskPair& pair,
                                           const std::vector<double>& alpha_grid,
                                           const EngineConfig& cfg);

} // namespace opvar
