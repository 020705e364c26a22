#include "opvar/char_fn.hpp"

#include <cmath>
#include <functional>

#include "opvar/errors.hpp"
#include "opvar/numerics.hpp"

namespace opvar {
namespace detail {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Integrand weight (1 + u/a)^(-q), evaluated in log space.
struct PowerWeight {
    double a, q;
    double operator()(double u) const { return std::exp(-q * std::log1p(u / a)); }
};

// Integrate f over [lo, hi], pre-splitting geometrically from `scale`
// upward; the integrand varies on that scale near the left end.
QuadResult integrate_scaled(const std::function<double(double)>& f,
                            double lo, double hi, double scale,
                            double abs_tol, double rel_tol) {
    std::vector<double> cuts{lo};
    for (double b = std::max(scale, 1e-18); b < hi; b *= 2.0) cuts.push_back(b);
    cuts.push_back(hi);
    QuadResult acc;
    KahanSum value;
    const double piece_tol = abs_tol / static_cast<double>(cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        const QuadResult piece =
            integrate_adaptive(f, cuts[i], cuts[i + 1], piece_tol, rel_tol);
        value.add(piece.value);
        acc.error += piece.error;
        acc.evals += piece.evals;
    }
    acc.value = value.value();
    return acc;
}

struct TailSum {
    double value = 0.0;
    double err = 0.0;
    std::size_t segments = 0;
    bool converged = false;
};

// sum_{k>=1} (-1)^k seg(k) for half-period segment integrals seg(k) >= 0,
// Euler-accelerated. Settles either because the accelerated estimate
// stabilises or because the raw terms themselves die out.
TailSum accelerated_tail(const std::function<QuadResult(std::size_t)>& seg,
                         double tol, std::size_t max_segments) {
    EulerAccelerator acc;
    TailSum out;
    int settled = 0;
    int tiny = 0;
    for (std::size_t k = 1; k <= max_segments; ++k) {
        const QuadResult s = seg(k);
        out.err += s.error;
        acc.add((k % 2 == 0) ? s.value : -s.value);
        settled = (acc.last_change() < 0.25 * tol) ? settled + 1 : 0;
        tiny = (std::abs(s.value) < 0.01 * tol) ? tiny + 1 : 0;
        if ((settled >= 3 && k >= 12) || (tiny >= 2 && k >= 3)) {
            out.value = acc.estimate();
            out.err += acc.last_change();
            out.segments = k;
            out.converged = true;
            return out;
        }
    }
    out.value = acc.estimate();
    out.err += acc.last_change();
    out.segments = max_segments;
    return out;
}

} // namespace

CfParts severity_cf_parts(double a, double q, double tol,
                          std::size_t max_segments) {
    CfParts out;
    if (!(a > 0.0)) throw std::domain_error("severity_cf_parts: a must be > 0");
    if (a < 1e-200) return out;  // both integrals vanish below this scale

    const PowerWeight w{a, q};

    const QuadResult head_sin = integrate_scaled(
        [&](double u) { return std::sin(u) * w(u); }, 0.0, kPi, a,
        0.05 * tol, tol);
    const TailSum tail_sin = accelerated_tail(
        [&](std::size_t k) {
            const double off = static_cast<double>(k) * kPi;
            return integrate_adaptive(
                [&](double v) { return std::sin(v) * w(off + v); }, 0.0, kPi,
                0.02 * tol, tol);
        },
        tol, max_segments);

    const QuadResult head_cos = integrate_scaled(
        [&](double u) { return std::cos(u) * w(u); }, 0.0, 0.5 * kPi, a,
        0.05 * tol, tol);
    const TailSum tail_cos = accelerated_tail(
        [&](std::size_t k) {
            const double off = static_cast<double>(k) * kPi;
            return integrate_adaptive(
                [&](double v) { return std::cos(v) * w(off + v); }, -0.5 * kPi,
                0.5 * kPi, 0.02 * tol, tol);
        },
        tol, max_segments);

    out.i_sin = head_sin.value + tail_sin.value;
    out.i_cos = head_cos.value + tail_cos.value;
    out.err = head_sin.error + tail_sin.err + head_cos.error + tail_cos.err;
    out.segments = tail_sin.segments + tail_cos.segments;
    if (!tail_sin.converged || !tail_cos.converged)
        throw AccuracyError("cf_severity: alternating segment series did not settle",
                            tol, out.err, out.i_sin);
    return out;
}

std::complex<double> SeverityCfTable::cf_direct(double t) const {
    if (t == 0.0) return {1.0, 0.0};
    const CfParts p = parts_direct(std::abs(t) * d_.sigma / d_.xi);
    const std::complex<double> phi{1.0 - p.i_sin, p.i_cos};
    return t > 0.0 ? phi : std::conj(phi);
}

CfParts SeverityCfTable::parts_direct(double a) const {
    return severity_cf_parts(a, 1.0 / d_.xi, tol_, max_segments_);
}

SeverityCfTable::SeverityCfTable(GpdSeverity d, double tol,
                                 std::size_t max_segments)
    : d_(d), tol_(tol), max_segments_(max_segments) {}

namespace {

double clenshaw(const std::array<double, 25>& a, double x) {
    double b1 = 0.0, b2 = 0.0;
    for (int k = 24; k >= 1; --k) {
        const double b0 = a[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return a[0] + x * b1 - b2;
}

} // namespace

void SeverityCfTable::build_range(double lo, double hi, int depth) const {
    constexpr int n = kDegree;
    Panel p;
    p.lo = lo;
    p.hi = hi;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<double, n + 1> fs{}, fc{};
    std::array<double, n + 1> xs{};
    for (int j = 0; j <= n; ++j) {
        xs[j] = std::cos(kPi * j / n);
        const CfParts parts = parts_direct(std::exp(mid + half * xs[j]));
        fs[j] = parts.i_sin;
        fc[j] = parts.i_cos;
    }
    for (int k = 0; k <= n; ++k) {
        double cs = 0.0, cc = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double weight = (j == 0 || j == n) ? 0.5 : 1.0;
            const double ck = std::cos(kPi * j * k / n);
            cs += weight * fs[j] * ck;
            cc += weight * fc[j] * ck;
        }
        p.sin_coef[k] = 2.0 / n * cs;
        p.cos_coef[k] = 2.0 / n * cc;
    }
    p.sin_coef[0] *= 0.5;
    p.cos_coef[0] *= 0.5;
    p.sin_coef[n] *= 0.5;
    p.cos_coef[n] *= 0.5;

    // Self-check at off-node points against the direct series.
    double worst = 0.0;
    for (const double x : {-0.83146961, -0.29028468, 0.33688985, 0.88192126}) {
        const CfParts ref = parts_direct(std::exp(mid + half * x));
        worst = std::max(worst, std::abs(clenshaw(p.sin_coef, x) - ref.i_sin));
        worst = std::max(worst, std::abs(clenshaw(p.cos_coef, x) - ref.i_cos));
    }
    if (worst > 10.0 * tol_ && depth > 0) {
        build_range(lo, mid, depth - 1);
        build_range(mid, hi, depth - 1);
        return;
    }
    if (worst > 100.0 * tol_)
        throw AccuracyError("SeverityCfTable: panel failed self-check", tol_, worst);
    panels_[lo] = p;
}

const SeverityCfTable::Panel& SeverityCfTable::panel_for(double la) const {
    auto it = panels_.upper_bound(la);
    if (it != panels_.begin()) {
        const Panel& p = std::prev(it)->second;
        if (la < p.hi) return p;
    }
    const double width = 1.0;
    const double lo = std::floor(la / width) * width;
    build_range(lo, lo + width, 6);
    it = panels_.upper_bound(la);
    return std::prev(it)->second;
}

CfParts SeverityCfTable::parts_at(double t) const {
    if (!(t > 0.0)) throw std::domain_error("SeverityCfTable::parts_at: t must be > 0");
    CfParts out;
    out.err = tol_;
    const double a = t * d_.sigma / d_.xi;
    if (a < 1e-190) return out;
    const double la = std::log(a);
    const Panel& p = panel_for(la);
    const double x = (2.0 * la - p.lo - p.hi) / (p.hi - p.lo);
    out.i_sin = clenshaw(p.sin_coef, x);
    out.i_cos = clenshaw(p.cos_coef, x);
    return out;
}

std::complex<double> SeverityCfTable::cf(double t) const {
    if (t == 0.0) return {1.0, 0.0};
    const CfParts p = parts_at(std::abs(t));
    const std::complex<double> phi{1.0 - p.i_sin, p.i_cos};
    return t > 0.0 ? phi : std::conj(phi);
}

} // namespace detail

std::complex<double> cf_severity(double t, const GpdSeverity& d,
                                 const EngineConfig& cfg) {
    if (t == 0.0) return {1.0, 0.0};
    const detail::CfParts p = detail::severity_cf_parts(
        std::abs(t) * d.sigma / d.xi, 1.0 / d.xi, cfg.quad_rel_tol,
        cfg.max_segments);
    const std::complex<double> phi{1.0 - p.i_sin, p.i_cos};
    return t > 0.0 ? phi : std::conj(phi);
}

std::complex<double> cf_compound(double t, const CompoundCell& cell,
                                 const EngineConfig& cfg) {
    if (t == 0.0) return {1.0, 0.0};
    const detail::CfParts p = detail::severity_cf_parts(
        std::abs(t) * cell.severity.sigma / cell.severity.xi,
        1.0 / cell.severity.xi, cfg.quad_rel_tol, cfg.max_segments);
    // lambda*(phi - 1) assembled from the parts; 1 - (1 - i_sin) would cancel.
    const std::complex<double> w{-cell.frequency.lambda * p.i_sin,
                                 cell.frequency.lambda * p.i_cos};
    const std::complex<double> psi = std::exp(w);
    return t > 0.0 ? psi : std::conj(psi);
}

} // namespace opvar
