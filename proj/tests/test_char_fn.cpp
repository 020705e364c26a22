#include <doctest.h>

#include <cmath>
#include <complex>

#include "opvar/char_fn.hpp"
#include "opvar/distributions.hpp"
#include "opvar/engine.hpp"

using namespace opvar;

namespace {

const EngineConfig kCfg{};

struct PartsRef {
    double a, q, i_sin, i_cos;
};

// High-precision references for the scale-free CF integrals
//   i_sin = int_0^inf sin(u) (1+u/a)^(-q) du,
//   i_cos = int_0^inf cos(u) (1+u/a)^(-q) du,
// computed with 40-digit arithmetic (scale-split head + oscillatory tail).
constexpr PartsRef kRefs[] = {
    {1.0, 2.0, 0.34337796155642703, 0.37855037576418664},
    {0.01, 0.5, 0.12420518577376368, 0.10657897379188278},
    {100.0, 0.5, 0.99992506546336361, 0.0049981279426342198},
    {1e-6, 0.5, 0.0012533128853340696, 0.0012513153906290114},
    {1e-6, 10.0, 1.3888888888888557e-14, 1.1111111111110912e-7},
    {12.34, 1.25, 0.98293671278810044, 0.096997156684657532},
    {0.3, 0.8, 0.39503505091096824, 0.30284278866782695},
    {1e4, 2.0, 0.999999940000012, 0.0001999999760000072},
    {1e-12, 0.5, 1.2533141373142469e-6, 1.2533121373167536e-6},
    {1e-12, 0.25, 0.0011321374102045819, 0.00046894666844468295},
};

} // namespace

TEST_CASE("severity cf parts against high-precision references") {
    for (const PartsRef& ref : kRefs) {
        const detail::CfParts p = detail::severity_cf_parts(
            ref.a, ref.q, kCfg.quad_rel_tol, kCfg.max_segments);
        CHECK(std::abs(p.i_sin - ref.i_sin) <
              5e-12 + 1e-11 * std::abs(ref.i_sin));
        CHECK(std::abs(p.i_cos - ref.i_cos) <
              5e-12 + 1e-11 * std::abs(ref.i_cos));
    }
}

TEST_CASE("cf at zero is exactly one") {
    GpdSeverity d(0.5, 1.0);
    CHECK(cf_severity(0.0, d, kCfg) == std::complex<double>(1.0, 0.0));
    CHECK(cf_compound(0.0, CompoundCell(3.0, 0.5, 1.0), kCfg) ==
          std::complex<double>(1.0, 0.0));
}

TEST_CASE("cf modulus bound on a log grid") {
    GpdSeverity d(0.5, 1.0);
    for (double t = 1e-12; t <= 1.01e-2; t *= 10.0) {
        CHECK(std::abs(cf_severity(t, d, kCfg)) <= 1.0 + 5e-13);
    }
    GpdSeverity heavy(2.0, 10000.0);
    for (double t = 1e-12; t <= 1.01e-2; t *= 10.0) {
        CHECK(std::abs(cf_severity(t, heavy, kCfg)) <= 1.0 + 5e-13);
    }
}

TEST_CASE("small-t slope of Im cf recovers the mean") {
    GpdSeverity d(0.5, 1.0);  // mean = sigma/(1-xi) = 2
    const double t = 1e-9 / d.sigma;
    const double slope = cf_severity(t, d, kCfg).imag() / t;
    CHECK(slope == doctest::Approx(2.0).epsilon(0.01));

    // finite-difference oracle on the imaginary part at two small t
    const double fd = (cf_severity(2.0 * t, d, kCfg).imag() -
                       cf_severity(t, d, kCfg).imag()) / t;
    CHECK(fd == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("conjugate symmetry") {
    GpdSeverity d(2.0, 10000.0);
    for (double t : {1e-9, 3.7e-6, 0.12}) {
        const std::complex<double> plus = cf_severity(t, d, kCfg);
        const std::complex<double> minus = cf_severity(-t, d, kCfg);
        CHECK(minus == std::conj(plus));
    }
}

TEST_CASE("compound cf basics") {
    CompoundCell cell(2.0, 0.5, 1.0);
    // modulus bound |psi| = exp(lambda (Re phi - 1)) <= 1
    for (double t : {1e-6, 1e-3, 0.1, 1.0, 10.0, 1000.0}) {
        CHECK(std::abs(cf_compound(t, cell, kCfg)) <= 1.0 + 5e-13);
    }
    // lambda -> 0: |psi - 1| <= 2 lambda
    CompoundCell faint(1e-8, 0.5, 1.0);
    for (double t : {1e-3, 0.5, 20.0}) {
        CHECK(std::abs(cf_compound(t, faint, kCfg) - 1.0) <= 2e-8);
    }
}

TEST_CASE("severity cf table matches the direct series") {
    for (const GpdSeverity d : {GpdSeverity(2.0, 10000.0), GpdSeverity(0.5, 1.0),
                                GpdSeverity(1.0, 300.0)}) {
        detail::SeverityCfTable table(d, kCfg.quad_rel_tol, kCfg.max_segments);
        for (double t = 1.7e-13; t < 1.0; t *= 23.0) {
            const std::complex<double> a = table.cf(t);
            const std::complex<double> b = table.cf_direct(t);
            CHECK(std::abs(a - b) < 2e-12);
        }
        CHECK(table.panels_built() > 0);
    }
}
