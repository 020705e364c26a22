#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace opvar {

/// Compensated (Kahan) accumulator.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // absolute error estimate
    std::size_t evals = 0;
};

/// Adaptive Gauss-Kronrod (G7, K15) on [a, b]. Bisects until the local
/// K-G discrepancy satisfies max(abs_tol_local, rel_tol*|I|); error
/// estimates accumulate into the result.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b,
                              double abs_tol, double rel_tol,
                              int max_depth = 48);

/// Single non-adaptive K15 panel with its G7-based error estimate.
QuadResult kronrod15(const std::function<double(double)>& f, double a, double b);

/// Incremental van Wijngaarden / Euler transformation for alternating
/// series. Terms are fed signed; estimate() returns the accelerated sum
/// (accumulated with compensated summation). Regular: converges to the
/// ordinary sum for any convergent series, and geometrically for series
/// whose terms are smooth in the index.
class EulerAccelerator {
public:
    explicit EulerAccelerator(std::size_t max_terms = 4096);

    /// Feed the next signed term; returns the updated estimate.
    double add(double term);

    double estimate() const { return sum_; }
    double last_change() const { return change_; }
    std::size_t terms() const { return n_fed_; }

private:
    std::vector<double> w_;
    std::size_t n_ = 0;       // active rows in the averaging table
    std::size_t n_fed_ = 0;
    KahanSum kahan_;
    double sum_ = 0.0;
    double change_ = 0.0;
};

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Brent's method on [a, b] with f(a), f(b) of opposite sign. Iterates to
/// the x-tolerance max(xtol_abs, xtol_rel*|x|); stops early when |f| drops
/// below ftol.
RootResult brent(const std::function<double(double)>& f, double a, double b,
                 double xtol_rel, double xtol_abs, double ftol,
                 int max_iter = 200);

} // namespace opvar
