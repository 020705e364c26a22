#include "opvar/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace opvar {

namespace {

// QUADPACK qk15 abscissae/weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277,
    0.381830050505119, 0.417959183673469};

QuadResult kronrod15_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;

    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        resk += kWgk[j] * (fv1[j] + fv2[j]);
    }
    for (int j = 0; j < 3; ++j)
        resg += kWg[j] * (fv1[2 * j + 1] + fv2[2 * j + 1]);

    QuadResult r;
    r.value = resk * h;
    r.error = std::abs((resk - resg) * h);
    r.evals = 15;
    return r;
}

void integrate_recursive(const std::function<double(double)>& f,
                         double a, double b,
                         double abs_tol, double rel_tol,
                         int depth, QuadResult& acc) {
    const QuadResult panel = kronrod15_panel(f, a, b);
    acc.evals += panel.evals;
    const double tol = std::max(abs_tol, rel_tol * std::abs(panel.value));
    if (panel.error <= tol || depth <= 0 ||
        (b - a) <= std::numeric_limits<double>::min() * 4.0) {
        acc.value += panel.value;
        acc.error += panel.error;
        return;
    }
    const double m = 0.5 * (a + b);
    integrate_recursive(f, a, m, 0.5 * abs_tol, rel_tol, depth - 1, acc);
    integrate_recursive(f, m, b, 0.5 * abs_tol, rel_tol, depth - 1, acc);
}

} // namespace

QuadResult kronrod15(const std::function<double(double)>& f, double a, double b) {
    return kronrod15_panel(f, a, b);
}

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b,
                              double abs_tol, double rel_tol,
                              int max_depth) {
    QuadResult acc;
    if (a == b) return acc;
    integrate_recursive(f, a, b, abs_tol, rel_tol, max_depth, acc);
    return acc;
}

EulerAccelerator::EulerAccelerator(std::size_t max_terms) {
    w_.reserve(std::min<std::size_t>(max_terms, 512));
}

double EulerAccelerator::add(double term) {
    ++n_fed_;
    if (n_ == 0) {
        w_.assign(1, term);
        n_ = 1;
        kahan_ = KahanSum{};
        kahan_.add(0.5 * term);
        change_ = std::abs(kahan_.value() - sum_);
        sum_ = kahan_.value();
        return sum_;
    }
    // One van Wijngaarden sweep: shift the forward-difference averages.
    double tmp = w_[0];
    w_[0] = term;
    for (std::size_t j = 1; j < n_; ++j) {
        const double t2 = w_[j];
        w_[j] = 0.5 * (w_[j - 1] + tmp);
        tmp = t2;
    }
    const double next = 0.5 * (w_[n_ - 1] + tmp);
    double delta;
    if (std::abs(next) <= std::abs(w_[n_ - 1])) {
        w_.push_back(next);
        ++n_;
        delta = 0.5 * next;
    } else {
        delta = next;
    }
    kahan_.add(delta);
    sum_ = kahan_.value();
    change_ = std::abs(delta);
    return sum_;
}

RootResult brent(const std::function<double(double)>& f, double a, double b,
                 double xtol_rel, double xtol_abs, double ftol, int max_iter) {
    double fa = f(a);
    double fb = f(b);
    RootResult res;
    if (fa == 0.0) { res = {a, fa, 0, true}; return res; }
    if (fb == 0.0) { res = {b, fb, 0, true}; return res; }
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("brent: root not bracketed");

    double c = a, fc = fa;
    double d = b - a, e = b - a;
    for (int it = 1; it <= max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = e = b - a; }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 0.5 * std::max(xtol_abs, xtol_rel * std::abs(b)) +
                            2.0 * std::numeric_limits<double>::epsilon() * std::abs(b);
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || std::abs(fb) <= ftol) {
            res = {b, fb, it, true};
            return res;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic / secant step
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    res = {b, fb, max_iter, false};
    return res;
}

} // namespace opvar
