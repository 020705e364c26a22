#include "opvar/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace opvar {

namespace {

std::uint64_t mix_bits(std::uint64_t a, std::uint64_t b) {
    a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
    return a;
}

std::uint64_t double_bits(double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof(u));
    return u;
}

double quantile_inplace(std::vector<double>& v, double alpha) {
    const std::size_t idx = static_cast<std::size_t>(std::clamp(
        std::ceil(alpha * static_cast<double>(v.size())) - 1.0, 0.0,
        static_cast<double>(v.size()) - 1.0));
    std::nth_element(v.begin(), v.begin() + idx, v.end());
    return v[idx];
}

} // namespace

ComponentVarEstimate conditional_expectation_at(const PairSample& sample,
                                                Conditioning conditioning,
                                                double x, double bandwidth) {
    const std::size_t n = sample.l.size();
    if (n == 0 || sample.s.size() != n)
        throw std::invalid_argument("conditional_expectation_at: bad sample");
    if (!(x > 0.0)) throw std::domain_error("conditional_expectation_at: x must be > 0");

    // (conditioning value, s), sorted so the estimate is permutation
    // invariant; ties broken on s.
    std::vector<std::pair<double, double>> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = conditioning == Conditioning::on_L
                             ? sample.l[i]
                             : sample.l[i] + sample.s[i];
        pts[i] = {c, sample.s[i]};
    }
    std::sort(pts.begin(), pts.end());

    std::size_t lo, hi;  // window is [lo, hi)
    if (bandwidth > 0.0) {
        lo = std::lower_bound(pts.begin(), pts.end(),
                              std::make_pair(x - bandwidth, -1.0)) -
             pts.begin();
        hi = std::upper_bound(pts.begin(), pts.end(),
                              std::make_pair(x + bandwidth,
                                             std::numeric_limits<double>::max())) -
             pts.begin();
        if (lo >= hi)
            throw std::runtime_error(
                "conditional_expectation_at: empty window (unreliable estimate)");
    } else {
        const std::size_t m = std::max<std::size_t>(
            30, static_cast<std::size_t>(0.001 * static_cast<double>(n)));
        // nearest-rank window around x, grown outward one sample at a time
        std::size_t pos = std::lower_bound(pts.begin(), pts.end(),
                                           std::make_pair(x, -1.0)) -
                          pts.begin();
        lo = hi = std::min(pos, n - 1);
        hi = lo + 1;
        while (hi - lo < std::min(m, n)) {
            const bool can_left = lo > 0;
            const bool can_right = hi < n;
            if (!can_left && !can_right) break;
            const double dl = can_left ? x - pts[lo - 1].first
                                       : std::numeric_limits<double>::infinity();
            const double dr = can_right ? pts[hi].first - x
                                        : std::numeric_limits<double>::infinity();
            if (dl <= dr) --lo; else ++hi;
        }
    }

    const std::size_t m = hi - lo;
    double hmax = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
        hmax = std::max(hmax, std::abs(pts[i].first - x));

    // Epanechnikov weights on the scaled distance; degenerate windows
    // (all at x) fall back to a plain mean.
    const double h = hmax > 0.0 ? hmax * (1.0 + 1e-12) : 1.0;
    double wsum = 0.0, wssum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        const double z = (pts[i].first - x) / h;
        const double w = 1.0 - z * z;
        wsum += w;
        wssum += w * pts[i].second;
    }

    ComponentVarEstimate est;
    est.value = wssum / wsum;
    est.bandwidth = hmax;
    est.n_effective = m;
    est.reliable = m >= 30;

    // Bootstrap CI over the window, deterministically seeded from the
    // inputs so the estimate is a pure function of (sample, x, bandwidth).
    std::uint64_t seed = mix_bits(double_bits(x), m);
    seed = mix_bits(seed, double_bits(bandwidth));
    UniformStream u(seed, 7);
    constexpr int kBoot = 200;
    double bsum = 0.0, bsq = 0.0;
    for (int b = 0; b < kBoot; ++b) {
        double ws = 0.0, wss = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j =
                lo + std::min<std::size_t>(m - 1,
                                           static_cast<std::size_t>(u.next() * m));
            const double z = (pts[j].first - x) / h;
            const double w = 1.0 - z * z;
            ws += w;
            wss += w * pts[j].second;
        }
        const double v = wss / ws;
        bsum += v;
        bsq += v * v;
    }
    const double bvar = std::max(0.0, bsq / kBoot - (bsum / kBoot) * (bsum / kBoot));
    est.ci_halfwidth = 1.959964 * std::sqrt(bvar);
    return est;
}

ComponentVarEstimate component_var(const RiskPair& pair, double alpha,
                                   std::size_t n, std::uint64_t seed,
                                   double bandwidth) {
    const PairSample sample = sample_pair(pair, n, seed);
    std::vector<double> totals(n);
    for (std::size_t i = 0; i < n; ++i) totals[i] = sample.l[i] + sample.s[i];
    const double var_total = quantile_inplace(totals, alpha);
    return conditional_expectation_at(sample, Conditioning::on_sum, var_total,
                                      bandwidth);
}

std::vector<MarginalComponentRow> marginal_vs_component(
    const RiskPair& pair, double alpha, const std::vector<double>& epsilon_grid,
    std::size_t n, std::uint64_t seed) {
    for (double e : epsilon_grid)
        if (!(e > 0.0 && e <= 1.0))
            throw std::domain_error("marginal_vs_component: epsilon must lie in (0, 1]");

    const PairSample sample = sample_pair(pair, n, seed);
    std::vector<double> work(sample.l);
    const double var_L = quantile_inplace(work, alpha);
    const ComponentVarEstimate component = conditional_expectation_at(
        sample, Conditioning::on_L, var_L, 0.0);

    constexpr int kBoot = 24;
    std::vector<MarginalComponentRow> rows;
    rows.reserve(epsilon_grid.size());
    std::vector<double> bl(n), bt(n);
    for (std::size_t r = 0; r < epsilon_grid.size(); ++r) {
        const double eps = epsilon_grid[r];
        MarginalComponentRow row;
        row.epsilon = eps;
        row.component = component;

        for (std::size_t i = 0; i < n; ++i)
            work[i] = sample.l[i] + eps * sample.s[i];
        const double var_T = quantile_inplace(work, alpha);
        row.marginal_per_epsilon = (var_T - var_L) / eps;

        // Paired bootstrap of the quantile difference (common indices keep
        // the two quantiles coupled, exactly like the estimator itself).
        UniformStream u(mix_bits(seed, r + 1), 11);
        double bsum = 0.0, bsq = 0.0;
        for (int b = 0; b < kBoot; ++b) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t j = std::min<std::size_t>(
                    n - 1, static_cast<std::size_t>(u.next() * n));
                bl[i] = sample.l[j];
                bt[i] = sample.l[j] + eps * sample.s[j];
            }
            const double d =
                (quantile_inplace(bt, alpha) - quantile_inplace(bl, alpha)) / eps;
            bsum += d;
            bsq += d * d;
        }
        const double bvar =
            std::max(0.0, bsq / kBoot - (bsum / kBoot) * (bsum / kBoot));
        row.marginal_ci_halfwidth = 1.959964 * std::sqrt(bvar);
        row.flagged = row.marginal_ci_halfwidth > std::abs(row.marginal_per_epsilon);
        rows.push_back(row);
    }
    return rows;
}

} // namespace opvar
