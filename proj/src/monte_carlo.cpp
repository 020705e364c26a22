#include "opvar/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opvar {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t poisson_inversion(UniformStream& u, double lambda) {
    const double target = u.next();
    double p = std::exp(-lambda);
    double cdf = p;
    std::uint64_t k = 0;
    const std::uint64_t cap =
        static_cast<std::uint64_t>(lambda + 60.0 * std::sqrt(lambda) + 120.0);
    while (target > cdf && k < cap) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

// Hormann (1993) PTRS transformed rejection, valid for lambda >= 10.
std::uint64_t poisson_ptrs(UniformStream& u, double lambda) {
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double un = u.next() - 0.5;
        const double v = u.next();
        const double us = 0.5 - std::abs(un);
        const double kf = std::floor((2.0 * a / us + b) * un + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const double k = kf;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * loglam - lambda - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(kf);
    }
}

} // namespace

UniformStream::UniformStream(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t state = seed ^ (0xd1b54a32d192ed03ull * (stream_id + 1));
    const std::uint64_t a = splitmix64(state);
    const std::uint64_t b = splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    rng_.seed(seq);
}

std::uint64_t poisson_draw(UniformStream& u, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("poisson_draw: lambda must be > 0");
    return lambda < 30.0 ? poisson_inversion(u, lambda) : poisson_ptrs(u, lambda);
}

double sample_compound_one(UniformStream& u, const CompoundCell& cell) {
    const std::uint64_t n = poisson_draw(u, cell.frequency.lambda);
    double total = 0.0;
    for (std::uint64_t i = 0; i < n; ++i)
        total += gpd_quantile(u.next(), cell.severity);
    return total;
}

std::vector<double> sample_compound(const CompoundCell& cell, std::size_t n,
                                    std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_compound: n must be >= 1");
    UniformStream u(seed, 0);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = sample_compound_one(u, cell);
    return out;
}

PairSample sample_pair(const RiskPair& pair, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_pair: n must be >= 1");
    PairSample out;
    out.l.resize(n);
    out.s.resize(n);
    UniformStream ul(seed, 0);
    UniformStream us(seed, 1);
    if (pair.dependence == DependenceKind::independent) {
        for (std::size_t i = 0; i < n; ++i) {
            out.l[i] = sample_compound_one(ul, pair.cell_L);
            out.s[i] = sample_compound_one(us, pair.cell_S);
        }
    } else {
        const GSpec& g = *pair.g;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = sample_compound_one(us, pair.cell_S);
            const double u_draw = sample_compound_one(ul, pair.cell_L);
            out.s[i] = s;
            out.l[i] = g(s) * u_draw;
        }
    }
    return out;
}

VarEstimate quantile_with_ci(std::vector<double>& values, double alpha) {
    if (values.empty()) throw std::invalid_argument("quantile_with_ci: empty sample");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("quantile_with_ci: alpha must lie in (0, 1)");
    const double n = static_cast<double>(values.size());
    const auto order_stat = [&](double rank_1based) {
        std::size_t idx = static_cast<std::size_t>(
            std::clamp(rank_1based - 1.0, 0.0, n - 1.0));
        std::nth_element(values.begin(), values.begin() + idx, values.end());
        return values[idx];
    };

    const double rank = std::ceil(alpha * n);
    const double spread = 1.959964 * std::sqrt(n * alpha * (1.0 - alpha));

    VarEstimate est;
    est.engine_kind = EngineKind::monte_carlo;
    est.value = order_stat(rank);
    const double lo = order_stat(rank - spread);
    const double hi = order_stat(rank + spread);
    est.ci_halfwidth = 0.5 * (hi - lo);
    est.diagnostics.samples = values.size();
    return est;
}

VarEstimate var_monte_carlo(double alpha, const std::vector<CompoundCell>& cells,
                            const EngineConfig& cfg) {
    if (cells.empty()) throw std::invalid_argument("var_monte_carlo: no cells");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("var_monte_carlo: alpha must lie in (0, 1)");

    std::vector<double> totals(cfg.mc_samples, 0.0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        UniformStream u(cfg.mc_seed, c);
        for (std::size_t i = 0; i < cfg.mc_samples; ++i)
            totals[i] += sample_compound_one(u, cells[c]);
    }
    return quantile_with_ci(totals, alpha);
}

} // namespace opvar
