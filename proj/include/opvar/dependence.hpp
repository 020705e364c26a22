#pragma once

#include <cstdint>
#include <vector>

#include "opvar/monte_carlo.hpp"
#include "opvar/risk_pair.hpp"

namespace opvar {

enum class Conditioning { on_L, on_sum };

/// Windowed conditional-expectation estimate at a point of the
/// conditioning variable.
struct ComponentVarEstimate {
    double value = 0.0;
    double bandwidth = 0.0;       // realized window half-width (currency)
    std::size_t n_effective = 0;  // samples inside the window
    double ci_halfwidth = 0.0;    // bootstrap 95% CI
    bool reliable = false;        // n_effective >= 30
};

/// Nadaraya-Watson estimate of E[S | cond = x] over a window of the
/// conditioning variable (L or L+S). bandwidth > 0 selects all samples
/// within that distance of x; bandwidth <= 0 selects the m nearest ranks,
/// m = max(30, 0.001*n) — fixed-width windows go empty near extreme
/// quantiles of heavy-tailed samples. Deterministic given (sample, x,
/// bandwidth) and invariant under permutation of the sample. Throws on an
/// empty window.
ComponentVarEstimate conditional_expectation_at(const PairSample& sample,
                                                Conditioning conditioning,
                                                double x, double bandwidth);

/// Component VaR of S at level alpha: simulate the pair, locate the
/// empirical VaR of L+S, estimate E[S | L+S = VaR].
ComponentVarEstimate component_var(const RiskPair& pair, double alpha,
                                   std::size_t n, std::uint64_t seed,
                                   double bandwidth = 0.0);

struct MarginalComponentRow {
    double epsilon = 0.0;
    double marginal_per_epsilon = 0.0;   // (VaR(L + eps*S) - VaR(L)) / eps
    double marginal_ci_halfwidth = 0.0;  // paired-bootstrap 95% CI
    ComponentVarEstimate component;      // E[S | L = VaR(L)]
    bool flagged = false;                // CI wider than the estimate
};

/// Scaled-add-on comparison of marginal VaR against the conditional
/// expectation; the two columns converge as epsilon decreases. One common
/// sample drives every epsilon so the quantile differences stay resolvable.
std::vector<MarginalComponentRow> marginal_vs_component(
    const RiskPair& pair, double alpha, const std::vector<double>& epsilon_grid,
    std::size_t n, std::uint64_t seed);

} // namespace opvar
