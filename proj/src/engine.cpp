#include "opvar/engine.hpp"

#include <stdexcept>

#include "opvar/inversion.hpp"
#include "opvar/monte_carlo.hpp"
#include "opvar/panjer.hpp"

namespace opvar {

std::string to_string(EngineKind kind) {
    switch (kind) {
        case EngineKind::cf_inversion: return "cf";
        case EngineKind::panjer: return "panjer";
        case EngineKind::monte_carlo: return "mc";
    }
    return "unknown";
}

void EngineConfig::validate() const {
    if (!(abs_cdf_tol > 0.0)) throw std::domain_error("EngineConfig: abs_cdf_tol must be > 0");
    if (!(quad_rel_tol > 0.0)) throw std::domain_error("EngineConfig: quad_rel_tol must be > 0");
    if (max_segments < 1) throw std::domain_error("EngineConfig: max_segments must be >= 1");
    if (panjer_step < 0.0) throw std::domain_error("EngineConfig: panjer_step must be > 0 (or 0 for auto)");
    if (panjer_cutoff < 0.0) throw std::domain_error("EngineConfig: panjer_cutoff must be > 0 (or 0 for auto)");
    if (mc_samples < 1) throw std::domain_error("EngineConfig: mc_samples must be >= 1");
}

VarEstimate var(double alpha, const std::vector<CompoundCell>& cells,
                const EngineConfig& cfg) {
    cfg.validate();
    switch (cfg.engine_kind) {
        case EngineKind::cf_inversion: return var_cf_inversion(alpha, cells, cfg);
        case EngineKind::panjer: return var_panjer(alpha, cells, cfg);
        case EngineKind::monte_carlo: return var_monte_carlo(alpha, cells, cfg);
    }
    throw std::logic_error("var: unknown engine kind");
}

} // namespace opvar
