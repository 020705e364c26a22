#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "opvar/distributions.hpp"

namespace opvar {

/// Bounded positive mixing function g(s) = clamp(c0 + c1*s, a, b).
/// The clamp enforces 0 < a <= g(s) <= b for every s >= 0 by construction.
struct GSpec {
    double a;
    double b;
    double c0;
    double c1;

    GSpec(double a_, double b_, double c0_, double c1_)
        : a(a_), b(b_), c0(c0_), c1(c1_) {
        if (!(a > 0.0) || !(b >= a))
            throw std::domain_error("GSpec: need 0 < a <= b");
    }

    double operator()(double s) const { return std::clamp(c0 + c1 * s, a, b); }
};

enum class DependenceKind { independent, scale_mixture };

/// Prior cell, add-on cell, and how they are coupled. Under scale_mixture
/// the prior loss is L = g(S) * U with U drawn from cell_L's compound law,
/// so L keeps cell_L's tail index (g is bounded away from 0 and infinity).
struct RiskPair {
    CompoundCell cell_L;
    CompoundCell cell_S;
    DependenceKind dependence = DependenceKind::independent;
    std::optional<GSpec> g;

    RiskPair(CompoundCell l, CompoundCell s,
             DependenceKind dep = DependenceKind::independent,
             std::optional<GSpec> g_ = std::nullopt)
        : cell_L(l), cell_S(s), dependence(dep), g(g_) {
        if (dependence == DependenceKind::scale_mixture && !g)
            throw std::invalid_argument("RiskPair: scale_mixture requires a GSpec");
    }
};

} // namespace opvar
