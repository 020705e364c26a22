#pragma once

#include <string>
#include <vector>

#include "opvar/engine.hpp"
#include "opvar/risk_pair.hpp"

namespace opvar {

/// Raised for unparseable or invalid scenario files; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat key = value scenario description. '#' starts a comment; keys may
/// appear once. Unknown keys are rejected. See docs/config.md for the key
/// reference.
struct ScenarioConfig {
    double lambda_L = 0.0, xi_L = 0.0, sigma_L = 0.0;
    double lambda_S = 0.0, xi_S = 0.0, sigma_S = 0.0;
    DependenceKind dependence = DependenceKind::independent;
    double g_a = 1.0, g_b = 1.0, g_c0 = 1.0, g_c1 = 0.0;
    std::vector<double> alphas{0.999};
    EngineConfig engine;
    std::string out;

    RiskPair make_pair() const;
};

ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

} // namespace opvar
