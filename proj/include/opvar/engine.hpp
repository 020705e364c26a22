#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opvar/distributions.hpp"

namespace opvar {

enum class EngineKind { cf_inversion, panjer, monte_carlo };

std::string to_string(EngineKind kind);

/// Numerical knobs shared by the three CDF/VaR engines. Engines are pure
/// given (inputs, config, seed); any number of concurrent evaluations with
/// distinct engine instances is safe.
struct EngineConfig {
    EngineKind engine_kind = EngineKind::cf_inversion;

    // cf-inversion engine
    double abs_cdf_tol = 1e-12;        // absolute CDF accuracy target
    double quad_rel_tol = 1e-13;       // per-segment quadrature tolerance
    std::size_t max_segments = 1000000; // cap on oscillation half-periods

    // Panjer engine; 0 means "derive from the evaluation scale"
    double panjer_step = 0.0;          // lattice width h (currency)
    double panjer_cutoff = 0.0;        // lattice top (currency)

    // Monte Carlo engine
    std::size_t mc_samples = 1000000;
    std::uint64_t mc_seed = 1;

    void validate() const;             // throws std::domain_error
};

struct EngineDiagnostics {
    std::size_t segments = 0;   // half-periods summed (cf engine)
    std::size_t samples = 0;    // draws (Monte Carlo engine)
    std::size_t lattice_points = 0; // lattice size (Panjer engine)
    double achieved_tol = 0.0;  // engine's own absolute error estimate
    std::string warning;        // empty when clean
};

struct VarEstimate {
    double value = 0.0;
    double ci_halfwidth = 0.0;  // 0 for the deterministic engines
    EngineKind engine_kind = EngineKind::cf_inversion;
    EngineDiagnostics diagnostics;
};

/// VaR_alpha of the total of one or two independent cells, routed by
/// cfg.engine_kind. alpha at or below the zero atom exp(-sum lambda)
/// returns 0 with a warning diagnostic rather than failing.
VarEstimate var(double alpha, const std::vector<CompoundCell>& cells,
                const EngineConfig& cfg);

} // namespace opvar
