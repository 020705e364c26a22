#include "opvar/distributions.hpp"

#include <cmath>

namespace opvar {

namespace {

void require_nonnegative(double x, const char* who) {
    if (!(x >= 0.0)) throw std::domain_error(std::string(who) + ": x must be >= 0");
}

} // namespace

double GpdSeverity::mean() const {
    if (xi >= 1.0) throw std::domain_error("GpdSeverity::mean: infinite for xi >= 1");
    return sigma / (1.0 - xi);
}

double gpd_sf(double x, const GpdSeverity& d) {
    require_nonnegative(x, "gpd_sf");
    return std::exp(-std::log1p(d.xi * x / d.sigma) / d.xi);
}

double gpd_cdf(double x, const GpdSeverity& d) {
    require_nonnegative(x, "gpd_cdf");
    return -std::expm1(-std::log1p(d.xi * x / d.sigma) / d.xi);
}

double gpd_pdf(double x, const GpdSeverity& d) {
    require_nonnegative(x, "gpd_pdf");
    return std::exp(-(1.0 / d.xi + 1.0) * std::log1p(d.xi * x / d.sigma)) / d.sigma;
}

double gpd_quantile(double p, const GpdSeverity& d) {
    if (!(p >= 0.0) || p >= 1.0)
        throw std::domain_error("gpd_quantile: p must lie in [0, 1)");
    // (1-p)^(-xi) - 1 == expm1(-xi*log1p(-p)), exact near both endpoints.
    return d.sigma / d.xi * std::expm1(-d.xi * std::log1p(-p));
}

double gpd_integrated_sf(double y, const GpdSeverity& d) {
    require_nonnegative(y, "gpd_integrated_sf");
    const double ly = std::log1p(d.xi * y / d.sigma);
    if (d.xi == 1.0) return d.sigma * ly;
    return d.sigma / (d.xi - 1.0) * std::expm1((d.xi - 1.0) / d.xi * ly);
}

double gpd_partial_mean(double a, double b, const GpdSeverity& d) {
    if (!(a >= 0.0) || !(b >= a))
        throw std::domain_error("gpd_partial_mean: need 0 <= a <= b");
    return a * gpd_sf(a, d) - b * gpd_sf(b, d) +
           gpd_integrated_sf(b, d) - gpd_integrated_sf(a, d);
}

double expected_loss(const CompoundCell& cell) {
    return cell.frequency.lambda * cell.severity.mean();
}

} // namespace opvar
