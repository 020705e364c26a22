#pragma once

#include <cstddef>
#include <vector>

#include "opvar/distributions.hpp"
#include "opvar/engine.hpp"

namespace opvar {

/// Severity mass on the lattice {0, h, ..., n*h} by first-order local
/// moment matching: each interval's probability is split between its two
/// endpoints so the interval mean is preserved. Mass beyond n*h is left
/// out (the recursion below never needs it for arguments <= n*h).
std::vector<double> discretize_severity(const GpdSeverity& d, double h,
                                        std::size_t n);

/// Poisson-case recursion p_k = (lambda/k) sum_{j=1..k} j f_j p_{k-j},
/// p_0 = exp(-lambda (1 - f_0)). f may carry mass at index 0.
std::vector<double> panjer_recursion(const std::vector<double>& severity_mass,
                                     double lambda);

/// Compound CDF of one or two independent cells at x on an h-lattice.
/// Two cells combine into a single compound with the intensity-weighted
/// severity mixture. Throws TruncationError when x exceeds an explicit
/// cfg.panjer_cutoff.
double panjer_cdf(double x, const std::vector<CompoundCell>& cells,
                  const EngineConfig& cfg);

/// Lattice quantile: smallest lattice point with CDF >= alpha. Grows the
/// lattice geometrically until the quantile is covered (or the lattice cap
/// is hit, which raises TruncationError with the missing mass). The
/// recursion is quadratic in the lattice size, so proving that a large
/// explicit cutoff is too small costs the full lattice pass.
VarEstimate var_panjer(double alpha, const std::vector<CompoundCell>& cells,
                       const EngineConfig& cfg);

} // namespace opvar
