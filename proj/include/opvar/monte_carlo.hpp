#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "opvar/distributions.hpp"
#include "opvar/engine.hpp"
#include "opvar/risk_pair.hpp"

namespace opvar {

/// Deterministic uniform stream: mt19937_64 seeded through splitmix64 from
/// (seed, stream id), mapped to [0,1) by the explicit 53-bit construction.
/// std::uniform_real_distribution is implementation-defined and would break
/// the bit-identical reproducibility contract.
class UniformStream {
public:
    UniformStream(std::uint64_t seed, std::uint64_t stream_id);

    double next() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 rng_;
};

/// Poisson draw: sequential-search inversion for small lambda, Hormann's
/// PTRS transformed rejection above. Deterministic given the stream state.
std::uint64_t poisson_draw(UniformStream& u, double lambda);

/// One compound draw: N ~ Poisson(lambda), then N exact inverse-transform
/// GPD severities.
double sample_compound_one(UniformStream& u, const CompoundCell& cell);

/// n compound totals; bit-identical for a fixed (seed, n).
std::vector<double> sample_compound(const CompoundCell& cell, std::size_t n,
                                    std::uint64_t seed);

struct PairSample {
    std::vector<double> l;
    std::vector<double> s;
};

/// n draws of (L, S). Independent pairs use disjoint substreams for the two
/// legs; scale_mixture draws S and U on disjoint substreams and sets
/// L = g(S) * U.
PairSample sample_pair(const RiskPair& pair, std::size_t n, std::uint64_t seed);

/// Order statistic at ceil(alpha*n) with the binomial (normal-approximated)
/// 95% order-statistic confidence interval. Reorders `values`.
VarEstimate quantile_with_ci(std::vector<double>& values, double alpha);

/// Monte Carlo VaR of the total of independent cells.
VarEstimate var_monte_carlo(double alpha, const std::vector<CompoundCell>& cells,
                            const EngineConfig& cfg);

} // namespace opvar
