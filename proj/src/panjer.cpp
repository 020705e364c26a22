#include "opvar/panjer.hpp"

#include <algorithm>
#include <cmath>

#include "opvar/errors.hpp"
#include "opvar/numerics.hpp"

namespace opvar {

namespace {

constexpr std::size_t kLatticeCap = 1u << 20;

double quantile_scale(double alpha, const std::vector<CompoundCell>& cells) {
    double s = 0.0;
    for (const CompoundCell& c : cells) {
        const double ratio = c.frequency.lambda / (1.0 - alpha);
        s += c.severity.sigma / c.severity.xi *
             (std::pow(ratio, c.severity.xi) - 1.0);
    }
    return s;
}

std::vector<double> mixed_severity_mass(const std::vector<CompoundCell>& cells,
                                        double h, std::size_t n,
                                        double lambda_total) {
    std::vector<double> f(n + 1, 0.0);
    for (const CompoundCell& c : cells) {
        const std::vector<double> fc = discretize_severity(c.severity, h, n);
        const double wgt = c.frequency.lambda / lambda_total;
        for (std::size_t j = 0; j <= n; ++j) f[j] += wgt * fc[j];
    }
    return f;
}

} // namespace

std::vector<double> discretize_severity(const GpdSeverity& d, double h,
                                        std::size_t n) {
    if (!(h > 0.0)) throw std::domain_error("discretize_severity: h must be > 0");
    std::vector<double> f(n + 1, 0.0);
    double cdf_lo = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = j * h;
        const double b = (j + 1) * h;
        const double cdf_hi = gpd_cdf(b, d);
        const double mass = cdf_hi - cdf_lo;
        cdf_lo = cdf_hi;
        if (mass <= 0.0) continue;
        const double mean = gpd_partial_mean(a, b, d) / mass;
        const double w_hi = std::clamp((mean - a) / h, 0.0, 1.0);
        f[j] += mass * (1.0 - w_hi);
        f[j + 1] += mass * w_hi;
    }
    return f;
}

std::vector<double> panjer_recursion(const std::vector<double>& severity_mass,
                                     double lambda) {
    if (severity_mass.empty())
        throw std::invalid_argument("panjer_recursion: empty severity mass");
    if (!(lambda > 0.0))
        throw std::domain_error("panjer_recursion: lambda must be > 0");
    const std::size_t n = severity_mass.size() - 1;
    std::vector<double> jf(n + 1);
    for (std::size_t j = 0; j <= n; ++j) jf[j] = j * severity_mass[j];

    std::vector<double> p(n + 1, 0.0);
    p[0] = std::exp(-lambda * (1.0 - severity_mass[0]));
    for (std::size_t k = 1; k <= n; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += jf[j] * p[k - j];
        p[k] = lambda / static_cast<double>(k) * s;
    }
    return p;
}

double panjer_cdf(double x, const std::vector<CompoundCell>& cells,
                  const EngineConfig& cfg) {
    if (!(x >= 0.0)) throw std::domain_error("panjer_cdf: x must be >= 0");
    if (cells.empty()) throw std::invalid_argument("panjer_cdf: no cells");
    if (cfg.panjer_cutoff > 0.0 && x > cfg.panjer_cutoff)
        throw TruncationError("panjer_cdf: x beyond panjer_cutoff", 0.0);

    double lambda_total = 0.0;
    for (const CompoundCell& c : cells) lambda_total += c.frequency.lambda;
    if (x == 0.0) return std::exp(-lambda_total);  // severities are a.s. positive

    const double h = cfg.panjer_step > 0.0 ? cfg.panjer_step : x / 2.0e4;
    if (!(h > 0.0)) throw std::domain_error("panjer_cdf: lattice step is 0");
    const std::size_t n = static_cast<std::size_t>(std::floor(x / h + 1e-9));
    if (n > kLatticeCap)
        throw TruncationError("panjer_cdf: lattice larger than the cap; raise panjer_step",
                              0.0);

    const std::vector<double> f = mixed_severity_mass(cells, h, n, lambda_total);
    const std::vector<double> p = panjer_recursion(f, lambda_total);
    KahanSum cdf;
    for (std::size_t k = 0; k <= n; ++k) cdf.add(p[k]);
    return std::min(cdf.value(), 1.0);
}

VarEstimate var_panjer(double alpha, const std::vector<CompoundCell>& cells,
                       const EngineConfig& cfg) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("var_panjer: alpha must lie in (0, 1)");
    if (cells.empty()) throw std::invalid_argument("var_panjer: no cells");

    VarEstimate est;
    est.engine_kind = EngineKind::panjer;

    double lambda_total = 0.0;
    for (const CompoundCell& c : cells) lambda_total += c.frequency.lambda;
    if (alpha <= std::exp(-lambda_total)) {
        est.diagnostics.warning = "alpha at or below the zero atom; VaR is 0";
        return est;
    }

    const double seed = quantile_scale(alpha, cells);
    const double h = cfg.panjer_step > 0.0 ? cfg.panjer_step : seed / 2.0e4;
    double cutoff = cfg.panjer_cutoff > 0.0 ? cfg.panjer_cutoff : 4.0 * seed;

    for (;;) {
        const std::size_t n =
            std::min<std::size_t>(kLatticeCap,
                                  static_cast<std::size_t>(std::ceil(cutoff / h)));
        const std::vector<double> f = mixed_severity_mass(cells, h, n, lambda_total);
        std::vector<double> jf(n + 1);
        for (std::size_t j = 0; j <= n; ++j) jf[j] = j * f[j];

        // recursion fused with the CDF walk so the loop stops at the
        // quantile instead of filling the whole lattice
        std::vector<double> p(n + 1, 0.0);
        p[0] = std::exp(-lambda_total * (1.0 - f[0]));
        KahanSum cdf;
        cdf.add(p[0]);
        std::size_t k = 0;
        while (cdf.value() < alpha && k < n) {
            ++k;
            double s = 0.0;
            for (std::size_t j = 1; j <= k; ++j) s += jf[j] * p[k - j];
            p[k] = lambda_total / static_cast<double>(k) * s;
            cdf.add(p[k]);
        }
        if (cdf.value() >= alpha) {
            est.value = k * h;
            est.diagnostics.lattice_points = k + 1;
            est.diagnostics.achieved_tol = h;  // lattice resolution
            return est;
        }
        const double missing = 1.0 - cdf.value();
        if (n >= kLatticeCap || cfg.panjer_cutoff > 0.0)
            throw TruncationError(
                "var_panjer: quantile beyond the lattice cutoff", missing);
        cutoff *= 2.0;
    }
}

} // namespace opvar
