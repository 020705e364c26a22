#pragma once

#include <stdexcept>

namespace opvar {

/// Generalized Pareto severity with shape xi > 0 and scale sigma > 0.
/// Survival function (1 + xi*x/sigma)^(-1/xi); tail index 1/xi.
/// The light-tailed limit xi <= 0 is rejected: everything downstream
/// assumes a strictly regularly varying tail with finite positive index.
struct GpdSeverity {
    double xi;
    double sigma;

    GpdSeverity(double xi_, double sigma_) : xi(xi_), sigma(sigma_) {
        if (!(xi > 0.0)) throw std::domain_error("GpdSeverity: xi must be > 0");
        if (!(sigma > 0.0)) throw std::domain_error("GpdSeverity: sigma must be > 0");
    }

    double tail_index() const { return 1.0 / xi; }
    bool has_finite_mean() const { return xi < 1.0; }

    /// sigma/(1-xi); throws for xi >= 1 where the mean diverges.
    double mean() const;
};

struct PoissonFrequency {
    double lambda;

    explicit PoissonFrequency(double lambda_) : lambda(lambda_) {
        if (!(lambda > 0.0)) throw std::domain_error("PoissonFrequency: lambda must be > 0");
    }
};

/// One loss cell: Poisson event count with i.i.d. GPD severities.
/// The compound sum inherits the severity's regular-variation index.
struct CompoundCell {
    PoissonFrequency frequency;
    GpdSeverity severity;

    CompoundCell(PoissonFrequency f, GpdSeverity s) : frequency(f), severity(s) {}
    CompoundCell(double lambda, double xi, double sigma)
        : frequency(lambda), severity(xi, sigma) {}

    double tail_index() const { return severity.tail_index(); }
};

// Pointwise distribution math. The survival function is evaluated in log
// space (exp(-log1p(xi*x/sigma)/xi)); 1 - cdf would cancel catastrophically
// at the quantiles this library targets.

double gpd_cdf(double x, const GpdSeverity& d);
double gpd_sf(double x, const GpdSeverity& d);
double gpd_pdf(double x, const GpdSeverity& d);

/// Inverse of gpd_cdf: (sigma/xi)*((1-p)^(-xi) - 1) for p in [0, 1).
double gpd_quantile(double p, const GpdSeverity& d);

/// Integral of the survival function over [0, y]. Finite for every xi > 0;
/// converges to the mean as y grows when xi < 1.
double gpd_integrated_sf(double y, const GpdSeverity& d);

/// Partial first moment: integral of x dF over [a, b].
double gpd_partial_mean(double a, double b, const GpdSeverity& d);

/// lambda * sigma / (1 - xi); throws when the severity mean is infinite,
/// which signals that expected-loss based approximations do not apply.
double expected_loss(const CompoundCell& cell);

} // namespace opvar
