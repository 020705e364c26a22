// Acceptance suite: one pass/fail line per criterion, strict tolerances,
// wall-clock limits where stated. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "opvar/asymptotics.hpp"
#include "opvar/dependence.hpp"
#include "opvar/inversion.hpp"
#include "opvar/monte_carlo.hpp"
#include "opvar/panjer.hpp"
#include "opvar/sensitivity.hpp"

using namespace opvar;
using clock_type = std::chrono::steady_clock;

namespace {

EngineConfig tight_cfg() {
    EngineConfig cfg;
    cfg.abs_cdf_tol = 1e-13;
    return cfg;
}

CompoundCell prior_cell() { return CompoundCell(10.0, 2.0, 10000.0); }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

struct Check {
    std::ostringstream log;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (log.tellp() > 0) log << "; ";
            log << what;
        }
    }
};

double empirical_quantile(std::vector<double> v, double alpha) {
    const std::size_t idx = static_cast<std::size_t>(
        std::ceil(alpha * static_cast<double>(v.size()))) - 1;
    std::nth_element(v.begin(), v.begin() + idx, v.end());
    return v[idx];
}

// 1. prior VaR at alpha = 0.999 within 0.5% of 5.01e11, under 60 s
Check criterion1() {
    Check c;
    const auto t0 = clock_type::now();
    const VarEstimate v = var(0.999, {prior_cell()}, tight_cfg());
    const double elapsed =
        std::chrono::duration<double>(clock_type::now() - t0).count();
    const double rel = std::abs(v.value / 5.01e11 - 1.0);
    c.log << "var_L=" << fmt(v.value) << " rel=" << fmt(rel)
          << " t=" << fmt(elapsed) << "s";
    c.require(rel <= 0.005, "prior VaR off by more than 0.5%");
    c.require(elapsed <= 60.0, "runtime above 60 s");
    return c;
}

// 2. sub-linear power rows xi_S in {1.0, 1.2}: Approx within 1% of
//    {2.00e8, 3.30e9}, dVaR within 2% of {2.02e8, 3.31e9}, Error < 0,
//    under 5 minutes
Check criterion2() {
    Check c;
    const auto t0 = clock_type::now();
    const EngineConfig cfg = tight_cfg();
    AnalyzeHints hints;
    hints.var_L = var(0.999, {prior_cell()}, cfg);
    const double approx_ref[] = {2.00e8, 3.30e9};
    const double delta_ref[] = {2.02e8, 3.31e9};
    const double xis[] = {1.0, 1.2};
    for (int i = 0; i < 2; ++i) {
        const SensitivityReport rep = analyze(
            RiskPair(prior_cell(), CompoundCell(10.0, xis[i], 10000.0)), 0.999,
            cfg, &hints);
        c.log << "xi_S=" << xis[i] << ": approx=" << fmt(rep.approx)
              << " dVaR=" << fmt(rep.delta_var) << " err=" << fmt(rep.error) << "  ";
        c.require(!rep.failed, "engine failed");
        c.require(std::abs(rep.approx / approx_ref[i] - 1.0) <= 0.01,
                  "approx beyond 1%");
        c.require(std::abs(rep.delta_var / delta_ref[i] - 1.0) <= 0.02,
                  "delta var beyond 2%");
        c.require(rep.error < 0.0, "error sign not negative");
    }
    const double elapsed =
        std::chrono::duration<double>(clock_type::now() - t0).count();
    c.log << "t=" << fmt(elapsed) << "s";
    c.require(elapsed <= 300.0, "runtime above 5 min");
    return c;
}

// 3. equal-tail rows sigma_S in {100, 10000}: |Error| <= 1e-4 and dVaR
//    within 1% of {1.05e11, 1.50e12}
Check criterion3() {
    Check c;
    const EngineConfig cfg = tight_cfg();
    AnalyzeHints hints;
    hints.var_L = var(0.999, {prior_cell()}, cfg);
    const double sigmas[] = {100.0, 10000.0};
    const double delta_ref[] = {1.05e11, 1.50e12};
    for (int i = 0; i < 2; ++i) {
        const SensitivityReport rep = analyze(
            RiskPair(prior_cell(), CompoundCell(10.0, 2.0, sigmas[i])), 0.999,
            cfg, &hints);
        c.log << "sigma_S=" << sigmas[i] << ": dVaR=" << fmt(rep.delta_var)
              << " err=" << fmt(rep.error) << "  ";
        c.require(!rep.failed, "engine failed");
        c.require(std::abs(rep.error) <= 1e-4, "|error| above 1e-4");
        c.require(std::abs(rep.delta_var / delta_ref[i] - 1.0) <= 0.01,
                  "delta var beyond 1%");
    }
    return c;
}

// 4. dominant add-on rows xi_S in {3.5, 4.0}: var_LS within 2% of
//    {2.99e15, 2.52e17}; Approx equals its closed form within 0.1%
Check criterion4() {
    Check c;
    const EngineConfig cfg = tight_cfg();
    AnalyzeHints hints;
    hints.var_L = var(0.999, {prior_cell()}, cfg);
    const double xis[] = {3.5, 4.0};
    const double ls_ref[] = {2.99e15, 2.52e17};
    for (int i = 0; i < 2; ++i) {
        const CompoundCell addon(10.0, xis[i], 100.0);
        const SensitivityReport rep =
            analyze(RiskPair(prior_cell(), addon), 0.999, cfg, &hints);
        c.log << "xi_S=" << xis[i] << ": var_LS=" << fmt(rep.var_LS)
              << " approx=" << fmt(rep.approx) << "  ";
        c.require(!rep.failed, "engine failed");
        c.require(std::abs(rep.var_LS / ls_ref[i] - 1.0) <= 0.02,
                  "var_LS beyond 2%");
        c.require(rep.var_S.has_value(), "var_S missing");
        if (rep.var_S) {
            const double k = tail_ratio_constant(prior_cell(), addon).value;
            const double gamma = 1.0 / xis[i];
            const double closed =
                *rep.var_S + std::pow(*rep.var_S, gamma + 0.5) / (k * gamma);
            c.require(std::abs(rep.approx / closed - 1.0) <= 1e-3,
                      "approx deviates from its closed form");
        }
    }
    return c;
}

// 5. expected-loss rows: as-stated intensity 10 within 2% of the closed
//    form for xi_S in {0.1, 0.3}; as-published intensity 100 within 2% of
//    the printed {1111092, 1428553}
Check criterion5() {
    Check c;
    const EngineConfig cfg = tight_cfg();
    AnalyzeHints hints;
    hints.var_L = var(0.999, {prior_cell()}, cfg);
    for (double xi_S : {0.1, 0.3}) {
        const CompoundCell addon(10.0, xi_S, 10000.0);
        const SensitivityReport rep =
            analyze(RiskPair(prior_cell(), addon), 0.999, cfg, &hints);
        const double el = expected_loss(addon);
        c.log << "stated xi_S=" << xi_S << ": dVaR=" << fmt(rep.delta_var) << "  ";
        c.require(!rep.failed, "engine failed");
        c.require(std::abs(rep.delta_var / el - 1.0) <= 0.02,
                  "as-stated delta var beyond 2% of the closed form");
    }
    const double published_ref[] = {1111092.0, 1428553.0};
    const double xis[] = {0.1, 0.3};
    for (int i = 0; i < 2; ++i) {
        const SensitivityReport rep = analyze(
            RiskPair(prior_cell(), CompoundCell(100.0, xis[i], 10000.0)), 0.999,
            cfg, &hints);
        c.log << "published xi_S=" << xis[i] << ": dVaR=" << fmt(rep.delta_var)
              << "  ";
        c.require(!rep.failed, "engine failed");
        c.require(std::abs(rep.delta_var / published_ref[i] - 1.0) <= 0.02,
                  "as-published delta var beyond 2%");
    }
    return c;
}

// 6. error-versus-level curves: |Error| at 0.99999 strictly below |Error|
//    at 0.999 for xi_S in {0.8, 1.8}
Check criterion6() {
    Check c;
    const EngineConfig cfg = tight_cfg();
    for (double xi_S : {0.8, 1.8}) {
        const RiskPair pair(prior_cell(), CompoundCell(10.0, xi_S, 10000.0));
        const std::vector<SensitivityReport> reports =
            sweep_alpha(pair, {0.999, 0.99999}, cfg);
        c.log << "xi_S=" << xi_S << ": |err|=" << fmt(std::abs(reports[0].error))
              << "->" << fmt(std::abs(reports[1].error)) << "  ";
        c.require(!reports[0].failed && !reports[1].failed, "engine failed");
        c.require(std::abs(reports[1].error) < std::abs(reports[0].error),
                  "error did not shrink toward 1");
    }
    return c;
}

// 7. cross-engine oracle at (lambda=2, xi=0.5, sigma=1): Panjer h = 1e-4
//    within 2e-3 relative at alpha in {0.9, 0.99}; Monte Carlo n = 1e7 CI
//    covers the cf value; under 2 minutes
Check criterion7() {
    Check c;
    const auto t0 = clock_type::now();
    const std::vector<CompoundCell> cells{CompoundCell(2.0, 0.5, 1.0)};
    const EngineConfig cfg;
    EngineConfig pj = cfg;
    pj.panjer_step = 1e-4;
    CfInversionEngine eng(cells, cfg);
    for (double alpha : {0.9, 0.99}) {
        const double vcf = eng.var(alpha).value;
        const double vpj = var_panjer(alpha, cells, pj).value;
        const double rel = std::abs(vcf - vpj) / vcf;
        c.log << "alpha=" << alpha << ": cf=" << fmt(vcf) << " panjer=" << fmt(vpj)
              << " rel=" << fmt(rel) << "  ";
        c.require(rel <= 2e-3, "cf/panjer disagreement above 2e-3");
    }
    EngineConfig mc = cfg;
    mc.mc_samples = 10000000;
    mc.mc_seed = 20110604;
    const VarEstimate vmc = var_monte_carlo(0.99, cells, mc);
    const double vcf = eng.var(0.99).value;
    c.log << "mc=" << fmt(vmc.value) << "+-" << fmt(vmc.ci_halfwidth) << "  ";
    c.require(std::abs(vmc.value - vcf) <= vmc.ci_halfwidth,
              "MC confidence interval misses the cf value");
    const double elapsed =
        std::chrono::duration<double>(clock_type::now() - t0).count();
    c.log << "t=" << fmt(elapsed) << "s";
    c.require(elapsed <= 120.0, "runtime above 2 min");
    return c;
}

// 8. property suites: quantile/cdf roundtrip at 1e-12, characteristic
//    function identities, VaR monotonicity under a nonnegative add-on on
//    10 seeded random pairs, and the three tail-ratio trends
Check criterion8() {
    Check c;
    const EngineConfig cfg;

    // GPD roundtrip
    {
        const GpdSeverity d(2.0, 10000.0);
        bool ok = true;
        for (double p = 0.1; p < 0.99995; p = 0.5 * (1.0 + p))
            ok = ok && std::abs(gpd_cdf(gpd_quantile(p, d), d) - p) <= 1e-12;
        c.require(ok, "quantile/cdf roundtrip beyond 1e-12");
    }
    // characteristic function identities
    {
        const GpdSeverity d(0.5, 1.0);
        bool ok = cf_severity(0.0, d, cfg) == std::complex<double>(1.0, 0.0);
        for (double t = 1e-12; t <= 1e-2; t *= 10.0) {
            const std::complex<double> phi = cf_severity(t, d, cfg);
            ok = ok && std::abs(phi) <= 1.0 + 5e-13;
            ok = ok && std::abs(cf_severity(-t, d, cfg) - std::conj(phi)) == 0.0;
        }
        c.require(ok, "characteristic function identities violated");
    }
    // stochastic dominance on seeded random pairs
    {
        UniformStream rng(20240601, 0);
        bool ok = true;
        for (int trial = 0; trial < 10; ++trial) {
            const CompoundCell L(0.5 + 4.0 * rng.next(), 0.3 + 1.5 * rng.next(),
                                 0.5 + 2.0 * rng.next());
            const CompoundCell S(0.5 + 4.0 * rng.next(), 0.3 + 1.5 * rng.next(),
                                 0.5 + 2.0 * rng.next());
            const RiskPair pair =
                (trial % 2 == 0)
                    ? RiskPair(L, S)
                    : RiskPair(L, S, DependenceKind::scale_mixture,
                               GSpec(1.0, 2.0, 1.0, 0.2));
            const PairSample sample = sample_pair(pair, 200000, 100 + trial);
            std::vector<double> l(sample.l), t(sample.l);
            for (std::size_t i = 0; i < t.size(); ++i) t[i] += sample.s[i];
            ok = ok && empirical_quantile(t, 0.95) >= empirical_quantile(l, 0.95);
        }
        c.require(ok, "VaR dominance violated on a random pair");
    }
    // tail of the sum: ratio to the marginal tail sum approaches 1
    {
        CfInversionEngine eng_L({CompoundCell(2.0, 1.0, 1.0)}, cfg);
        CfInversionEngine eng_S({CompoundCell(1.0, 0.5, 1.0)}, cfg);
        CfInversionEngine eng_LS(
            {CompoundCell(2.0, 1.0, 1.0), CompoundCell(1.0, 0.5, 1.0)}, cfg);
        double prev = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (double alpha : {0.99, 0.999, 0.9999}) {
            const double x = eng_LS.var(alpha).value;
            const double ratio = (1.0 - eng_LS.cdf(x)) /
                                 ((1.0 - eng_L.cdf(x)) + (1.0 - eng_S.cdf(x)));
            ok = ok && std::abs(ratio - 1.0) < prev;
            prev = std::abs(ratio - 1.0);
        }
        c.require(ok, "sum-tail ratio sequence not decreasing");
    }
    // cdf-gap-over-density trends (expected-loss and power regimes)
    {
        const auto density = [&](const CfInversionEngine& eng, double x) {
            const double h = 6e-4 * x;
            return (eng.cdf(x + h) - eng.cdf(x - h)) / (2.0 * h);
        };
        CfInversionEngine eng_L({CompoundCell(2.0, 2.0, 1.0)}, cfg);
        CfInversionEngine eng_el(
            {CompoundCell(2.0, 2.0, 1.0), CompoundCell(1.0, 0.4, 1.0)}, cfg);
        const double el = expected_loss(CompoundCell(1.0, 0.4, 1.0));
        double prev = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (double alpha : {0.9, 0.99, 0.999}) {
            const double x = eng_L.var(alpha).value;
            const double ratio =
                (eng_el.cdf(x) - eng_L.cdf(x)) / density(eng_L, x);
            ok = ok && std::abs(ratio / (-el) - 1.0) < prev;
            prev = std::abs(ratio / (-el) - 1.0);
        }
        c.require(ok, "expected-loss gap ratio trend broken");

        CfInversionEngine eng_pw(
            {CompoundCell(2.0, 2.0, 1.0), CompoundCell(1.0, 1.0, 1.0)}, cfg);
        const double k = tail_ratio_constant(CompoundCell(2.0, 2.0, 1.0),
                                             CompoundCell(1.0, 1.0, 1.0)).value;
        prev = std::numeric_limits<double>::infinity();
        ok = true;
        for (double alpha : {0.9, 0.99, 0.999}) {
            const double x = eng_L.var(alpha).value;
            const double ratio =
                (eng_pw.cdf(x) - eng_L.cdf(x)) / density(eng_L, x);
            const double target = -k * std::pow(x, 0.5) / 0.5;
            ok = ok && std::abs(ratio / target - 1.0) < prev;
            prev = std::abs(ratio / target - 1.0);
        }
        c.require(ok, "power-regime gap ratio trend broken");
    }
    return c;
}

// 9. small-add-on check: independent pair with beta + 1 < gamma, eps = 0.01,
//    n = 1e7: scaled marginal VaR within 10% of the add-on mean; the
//    scale-mixture variant stays in [0.7, 1.3] and does not drift away
//    from 1 as alpha moves 0.99 -> 0.999
Check criterion9() {
    Check c;
    const std::size_t n = 10000000;
    // beta = 2, gamma = 5
    const RiskPair pair(CompoundCell(10.0, 0.5, 1.0), CompoundCell(10.0, 0.2, 1.0));
    const double el = expected_loss(pair.cell_S);
    {
        const PairSample s = sample_pair(pair, n, 1);
        std::vector<double> t(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = s.l[i] + 0.01 * s.s[i];
        const double marginal =
            (empirical_quantile(t, 0.99) - empirical_quantile(s.l, 0.99)) / 0.01;
        c.log << "marginal/eps=" << fmt(marginal) << " el=" << fmt(el) << "  ";
        c.require(std::abs(marginal / el - 1.0) <= 0.10,
                  "scaled marginal VaR beyond 10% of the add-on mean");
    }
    {
        const RiskPair mix(CompoundCell(10.0, 0.5, 1.0),
                           CompoundCell(10.0, 0.2, 1.0),
                           DependenceKind::scale_mixture, GSpec(1.0, 2.0, 1.0, 0.08));
        double prev_gap = 0.0;
        for (double alpha : {0.99, 0.999}) {
            const PairSample s = sample_pair(mix, n, 11);
            std::vector<double> tot(n);
            for (std::size_t i = 0; i < n; ++i) tot[i] = s.l[i] + s.s[i];
            const double v_l = empirical_quantile(s.l, alpha);
            const double delta = empirical_quantile(tot, alpha) - v_l;
            const ComponentVarEstimate cond =
                conditional_expectation_at(s, Conditioning::on_L, v_l, 0.0);
            const double ratio = delta / cond.value;
            c.log << "alpha=" << alpha << ": ratio=" << fmt(ratio) << "  ";
            if (alpha == 0.999) {
                c.require(ratio >= 0.7 && ratio <= 1.3,
                          "mixture ratio outside [0.7, 1.3]");
                c.require(std::abs(ratio - 1.0) <= prev_gap + 0.02,
                          "mixture ratio drifting away from 1 with alpha");
            }
            prev_gap = std::abs(ratio - 1.0);
        }
    }
    return c;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "prior VaR 5.01e11 within 0.5% in 60 s", criterion1},
        {2, "power-regime rows approx/delta within 1%/2%, negative error", criterion2},
        {3, "equal-tails rows |error| <= 1e-4, delta within 1%", criterion3},
        {4, "dominant add-on rows var_LS within 2%, closed-form approx", criterion4},
        {5, "expected-loss rows: both intensity variants within 2%", criterion5},
        {6, "approximation error shrinks toward alpha = 1", criterion6},
        {7, "cross-engine cf/panjer/mc agreement in 2 min", criterion7},
        {8, "property suites (roundtrip, cf identities, dominance, trends)", criterion8},
        {9, "small-add-on marginal VaR matches the add-on mean", criterion9},
    };

    int exit_code = 0;
    for (const Criterion& cr : criteria) {
        const auto t0 = clock_type::now();
        Check c;
        try {
            c = cr.run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.log << "exception: " << e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(clock_type::now() - t0).count();
        std::printf("[%s] criterion %d: %s  (%.1f s)%s%s\n",
                    c.ok ? "PASS" : "FAIL", cr.id, cr.name, elapsed,
                    c.log.str().empty() ? "" : "  -- ", c.log.str().c_str());
        std::fflush(stdout);
        if (!c.ok) exit_code = 1;
    }
    return exit_code;
}
