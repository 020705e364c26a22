#pragma once

#include <vector>

#include "opvar/char_fn.hpp"
#include "opvar/distributions.hpp"
#include "opvar/engine.hpp"

namespace opvar {

/// CDF/VaR of the total of one or two independent compound cells by
/// characteristic-function inversion. For a nonnegative total with CF psi,
///   F(x) = (2/pi) * integral_0^inf Re psi(t) sin(tx)/t dt,  x > 0.
/// The atom exp(-sum lambda) at zero makes Re psi approach a nonzero
/// constant, so the integrand is recentred on g(t) = Re psi(t) - atom and
/// the atom's sine integral added back in closed form. The t axis is
/// segmented exactly at the half-periods k*pi/x (sin(tx) = (-1)^k sin(u)
/// with u in [0, pi], so no large-argument sine is ever evaluated) and the
/// alternating segment series is Euler-accelerated.
///
/// Instances are immutable except for the lazy severity-CF panels; use one
/// instance per thread.
class CfInversionEngine {
public:
    CfInversionEngine(std::vector<CompoundCell> cells, EngineConfig cfg);

    struct CdfResult {
        double value = 0.0;
        double achieved = 0.0;   // absolute error estimate
        std::size_t segments = 0;
    };

    double cdf(double x) const;
    CdfResult cdf_detailed(double x) const;

    /// Quantile by bracketing + Brent on F(x) - alpha, seeded from the
    /// single-loss closed form. alpha <= atom() returns 0 with a warning.
    VarEstimate var(double alpha) const;

    double atom() const { return atom_; }

private:
    std::vector<CompoundCell> cells_;
    EngineConfig cfg_;
    std::vector<detail::SeverityCfTable> tables_;
    double atom_ = 1.0;
    double lambda_total_ = 0.0;

    // Re psi(t) - atom, via the tabulated severity CF parts.
    double centred_re_cf(double t) const;
};

/// One-shot helpers building a throwaway engine.
double cdf_compound(double x, const std::vector<CompoundCell>& cells,
                    const EngineConfig& cfg);
VarEstimate var_cf_inversion(double alpha, const std::vector<CompoundCell>& cells,
                             const EngineConfig& cfg);

} // namespace opvar
