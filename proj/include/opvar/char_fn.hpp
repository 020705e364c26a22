#pragma once

#include <array>
#include <complex>
#include <map>
#include <vector>

#include "opvar/distributions.hpp"
#include "opvar/engine.hpp"

namespace opvar {

/// E[exp(itX)] for X ~ GPD(xi, sigma), through the survival-function
/// identity E[exp(itX)] = 1 + it * integral_0^inf exp(itx) sf(x) dx.
/// The oscillatory integral is summed over sine/cosine half-periods with
/// Euler acceleration of the alternating segment series, which also covers
/// the infinite-mean regime xi >= 1 where sf is not absolutely integrable.
/// Throws AccuracyError when the series fails to settle within
/// cfg.max_segments.
std::complex<double> cf_severity(double t, const GpdSeverity& d,
                                 const EngineConfig& cfg);

/// Compound-Poisson characteristic function exp(lambda*(cf_severity(t)-1)).
std::complex<double> cf_compound(double t, const CompoundCell& cell,
                                 const EngineConfig& cfg);

namespace detail {

/// Scale-free severity CF pieces: with a = t*sigma/xi and q = 1/xi,
///   i_sin = integral_0^inf sin(u) (1+u/a)^(-q) du,
///   i_cos = integral_0^inf cos(u) (1+u/a)^(-q) du,
/// so that cf_severity = 1 - i_sin + i*i_cos.
struct CfParts {
    double i_sin = 0.0;
    double i_cos = 0.0;
    double err = 0.0;           // absolute error estimate
    std::size_t segments = 0;   // half-periods consumed
};

CfParts severity_cf_parts(double a, double q, double tol,
                          std::size_t max_segments);

/// Lazy piecewise-Chebyshev interpolant of (i_sin, i_cos) against log(a),
/// one instance per severity. Panels are built on demand from the direct
/// series above and self-checked at off-node points; panels that miss the
/// tolerance are bisected. Not thread-safe; engines own one per cell.
class SeverityCfTable {
public:
    SeverityCfTable(GpdSeverity d, double tol, std::size_t max_segments);

    std::complex<double> cf(double t) const;         // interpolated
    std::complex<double> cf_direct(double t) const;  // reference path

    /// Interpolated (i_sin, i_cos) at t > 0; lets callers assemble the
    /// compound exponent lambda*(phi-1) without the 1-(1-i_sin) cancellation.
    CfParts parts_at(double t) const;

    std::size_t panels_built() const { return panels_.size(); }

private:
    static constexpr int kDegree = 24;
    struct Panel {
        double lo = 0.0, hi = 0.0;  // in log(a)
        std::array<double, kDegree + 1> sin_coef{};
        std::array<double, kDegree + 1> cos_coef{};
    };

    CfParts parts_direct(double a) const;
    const Panel& panel_for(double la) const;
    void build_range(double lo, double hi, int depth) const;

    GpdSeverity d_;
    double tol_;
    std::size_t max_segments_;
    mutable std::map<double, Panel> panels_;  // keyed by lo
};

} // namespace detail
} // namespace opvar
