// opvar: compound-Poisson VaR and add-on sensitivity toolkit.
//
// Subcommands: analyze (scenario config in, CSV/JSON out), table1..table4 and
// figure1 (built-in reference studies), selftest (quick numerical checks).
// Exit codes: 0 success, 2 configuration error, 3 engine accuracy failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opvar/asymptotics.hpp"
#include "opvar/errors.hpp"
#include "opvar/inversion.hpp"
#include "opvar/monte_carlo.hpp"
#include "opvar/panjer.hpp"
#include "opvar/report_io.hpp"
#include "opvar/scenario.hpp"
#include "opvar/sensitivity.hpp"

namespace {

using namespace opvar;

constexpr double kRefAlpha = 0.999;

CompoundCell reference_prior() { return CompoundCell(10.0, 2.0, 10000.0); }

EngineConfig table_engine() {
    EngineConfig cfg;
    cfg.abs_cdf_tol = 1e-13;
    return cfg;
}

void emit(const std::string& content, const std::string& out) {
    if (out.empty()) {
        std::cout << content;
    } else {
        atomic_write(out, content);
        std::cerr << "wrote " << out << "\n";
    }
}

std::string flag_of(const SensitivityReport& rep) {
    if (rep.failed) return csv_field(rep.warning.empty() ? "failed" : rep.warning);
    return csv_field(rep.warning);
}

int run_analyze(const std::string& config_path, std::string out,
                const std::string& json_out,
                const std::optional<EngineKind>& engine_override,
                const std::optional<std::uint64_t>& seed_override,
                const std::vector<double>& alpha_override) {
    ScenarioConfig cfg = load_scenario(config_path);
    if (engine_override) cfg.engine.engine_kind = *engine_override;
    if (seed_override) cfg.engine.mc_seed = *seed_override;
    if (!alpha_override.empty()) {
        cfg.alphas = alpha_override;
        std::sort(cfg.alphas.begin(), cfg.alphas.end());
        if (std::adjacent_find(cfg.alphas.begin(), cfg.alphas.end()) !=
            cfg.alphas.end())
            throw ConfigError("--alpha values must be distinct");
        for (double a : cfg.alphas)
            if (!(a > 0.0 && a < 1.0))
                throw ConfigError("--alpha values must lie in (0, 1)");
    }
    if (out.empty()) out = cfg.out;

    const RiskPair pair = cfg.make_pair();
    std::vector<double> grid(cfg.alphas);
    std::sort(grid.begin(), grid.end());
    const std::vector<SensitivityReport> reports = sweep_alpha(pair, grid, cfg.engine);

    emit(analyze_csv(reports), out);
    if (!json_out.empty()) atomic_write(json_out, analyze_json(reports));

    int rc = 0;
    for (const SensitivityReport& rep : reports) {
        if (rep.failed) rc = 3;
        if (!rep.warning.empty()) std::cerr << "alpha " << rep.alpha << ": " << rep.warning << "\n";
    }
    return rc;
}

// Built-in studies share the prior cell and level, so the prior VaR is
// computed once and passed down as a hint.
SensitivityReport study_row(const CompoundCell& prior, const CompoundCell& addon,
                            double alpha, const EngineConfig& cfg,
                            const AnalyzeHints& hints) {
    return analyze(RiskPair(prior, addon), alpha, cfg, &hints);
}

int run_table_el(const std::string& out) {
    // expected-loss regime rows at two add-on intensities: as stated
    // (lambda_S = 10) and as published (lambda_S = 100)
    const EngineConfig cfg = table_engine();
    const CompoundCell prior = reference_prior();
    AnalyzeHints hints;
    hints.var_L = var(kRefAlpha, {prior}, cfg);

    std::ostringstream csv;
    csv << "config,xi_S,gamma_minus_beta,delta_var,approx,error,flag\n";
    int rc = 0;
    for (const auto& [variant, lambda_S] :
         std::vector<std::pair<std::string, double>>{{"as_stated", 10.0},
                                                     {"as_published", 100.0}}) {
        for (double xi_S : {0.1, 0.2, 0.3, 0.4, 0.5}) {
            const CompoundCell addon(lambda_S, xi_S, 10000.0);
            const SensitivityReport rep = study_row(prior, addon, kRefAlpha, cfg, hints);
            const double gmb = 1.0 / xi_S - 0.5;
            if (rep.failed) {
                rc = 3;
                csv << variant << ',' << csv_number(xi_S) << ',' << csv_number(gmb)
                    << ",NA,NA,NA," << flag_of(rep) << '\n';
                continue;
            }
            csv << variant << ',' << csv_number(xi_S) << ',' << csv_number(gmb)
                << ',' << csv_number(rep.delta_var) << ','
                << csv_number(rep.approx) << ',' << csv_number(rep.error)
                << ',' << flag_of(rep) << '\n';
        }
    }
    emit(csv.str(), out);
    return rc;
}

int run_table_power(const std::string& out) {
    const EngineConfig cfg = table_engine();
    const CompoundCell prior = reference_prior();
    AnalyzeHints hints;
    hints.var_L = var(kRefAlpha, {prior}, cfg);

    std::ostringstream csv;
    csv << "xi_S,gamma_minus_beta,delta_var,approx,error,flag\n";
    int rc = 0;
    for (double xi_S : {0.8, 1.0, 1.2, 1.5, 1.8}) {
        const SensitivityReport rep =
            study_row(prior, CompoundCell(10.0, xi_S, 10000.0), kRefAlpha, cfg, hints);
        const double gmb = 1.0 / xi_S - 0.5;
        if (rep.failed) {
            rc = 3;
            csv << csv_number(xi_S) << ',' << csv_number(gmb) << ",NA,NA,NA,"
                << flag_of(rep) << '\n';
            continue;
        }
        csv << csv_number(xi_S) << ',' << csv_number(gmb) << ','
            << csv_number(rep.delta_var) << ',' << csv_number(rep.approx)
            << ',' << csv_number(rep.error) << ',' << flag_of(rep) << '\n';
    }
    emit(csv.str(), out);
    return rc;
}

int run_table_equal(const std::string& out) {
    const EngineConfig cfg = table_engine();
    const CompoundCell prior = reference_prior();
    AnalyzeHints hints;
    hints.var_L = var(kRefAlpha, {prior}, cfg);

    std::ostringstream csv;
    csv << "sigma_S,delta_var,approx,error,flag\n";
    int rc = 0;
    for (double sigma_S : {100.0, 1000.0, 10000.0, 100000.0, 1000000.0}) {
        const SensitivityReport rep =
            study_row(prior, CompoundCell(10.0, 2.0, sigma_S), kRefAlpha, cfg, hints);
        if (rep.failed) {
            rc = 3;
            csv << csv_number(sigma_S) << ",NA,NA,NA," << flag_of(rep) << '\n';
            continue;
        }
        csv << csv_number(sigma_S) << ',' << csv_number(rep.delta_var) << ','
            << csv_number(rep.approx) << ',' << csv_number(rep.error)
            << ',' << flag_of(rep) << '\n';
    }
    emit(csv.str(), out);
    return rc;
}

int run_table_mirror(const std::string& out) {
    const EngineConfig cfg = table_engine();
    const CompoundCell prior = reference_prior();
    AnalyzeHints hints;
    hints.var_L = var(kRefAlpha, {prior}, cfg);

    std::ostringstream csv;
    csv << "xi_S,var_LS,approx,error,cf_var_S,flag\n";
    int rc = 0;
    for (double xi_S : {2.5, 3.0, 3.5, 4.0, 4.5}) {
        const SensitivityReport rep =
            study_row(prior, CompoundCell(10.0, xi_S, 100.0), kRefAlpha, cfg, hints);
        if (rep.failed || !rep.var_S) {
            rc = 3;
            csv << csv_number(xi_S) << ",NA,NA,NA,NA," << flag_of(rep) << '\n';
            continue;
        }
        csv << csv_number(xi_S) << ',' << csv_number(rep.var_LS) << ','
            << csv_number(rep.approx) << ',' << csv_number(rep.error)
            << ',' << csv_number(*rep.var_S) << ',' << flag_of(rep) << '\n';
    }
    emit(csv.str(), out);
    return rc;
}

int run_figure(const std::string& out) {
    const EngineConfig cfg = table_engine();
    const CompoundCell prior = reference_prior();
    const std::vector<double> grid{0.99, 0.995, 0.999, 0.9995,
                                   0.9999, 0.99995, 0.99999};

    std::vector<std::vector<SensitivityReport>> curves;
    int rc = 0;
    for (double xi_S : {0.8, 1.8}) {
        curves.push_back(
            sweep_alpha(RiskPair(prior, CompoundCell(10.0, xi_S, 10000.0)), grid, cfg));
    }
    std::ostringstream csv;
    csv << "alpha,error_xiS_0.8,error_xiS_1.8,flag\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::string flag;
        csv << csv_number(grid[i]);
        for (const auto& curve : curves) {
            if (curve[i].failed || !std::isfinite(curve[i].error)) {
                rc = 3;
                csv << ",NA";
                flag = flag_of(curve[i]);
            } else {
                csv << ',' << csv_number(curve[i].error);
            }
        }
        csv << ',' << flag << '\n';
    }
    emit(csv.str(), out);
    return rc;
}

int run_selftest() {
    int failures = 0;
    const auto report = [&](const char* name, bool ok, const std::string& detail) {
        std::printf("[%s] %s%s%s\n", ok ? "ok" : "FAIL", name,
                    detail.empty() ? "" : ": ", detail.c_str());
        if (!ok) ++failures;
    };

    {
        GpdSeverity d(2.0, 10000.0);
        bool ok = true;
        for (double p : {0.1, 0.5, 0.999, 1.0 - 1e-9})
            ok = ok && std::abs(gpd_cdf(gpd_quantile(p, d), d) - p) < 1e-12 * p + 1e-15;
        report("gpd quantile/cdf roundtrip", ok, "");
    }
    {
        EngineConfig cfg;
        GpdSeverity d(0.5, 1.0);
        bool ok = cf_severity(0.0, d, cfg) == std::complex<double>(1.0, 0.0);
        for (double t = 1e-9; t <= 10.0; t *= 100.0)
            ok = ok && std::abs(cf_severity(t, d, cfg)) <= 1.0 + 5e-13;
        report("characteristic function identities", ok, "");
    }
    {
        EngineConfig cfg;
        std::vector<CompoundCell> cells{CompoundCell(2.0, 0.5, 1.0)};
        EngineConfig pj = cfg;
        pj.panjer_step = 1e-3;
        CfInversionEngine eng(cells, cfg);
        const double med = eng.var(0.5).value;
        const double diff = std::abs(eng.cdf(med) - panjer_cdf(med, cells, pj));
        report("cf-inversion vs panjer cdf at the median", diff < 1e-4,
               "diff " + csv_number(diff));
        const double v99 = eng.var(0.99).value;
        EngineConfig mc = cfg;
        mc.engine_kind = EngineKind::monte_carlo;
        mc.mc_samples = 200000;
        const VarEstimate vmc = var(0.99, cells, mc);
        report("monte carlo CI covers cf var",
               std::abs(vmc.value - v99) <= 2.0 * vmc.ci_halfwidth,
               csv_number(vmc.value) + " vs " + csv_number(v99));
        report("var monotone in alpha", eng.var(0.999).value > v99, "");
    }
    return failures == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heavy-tail compound-Poisson VaR and add-on sensitivity"};
    app.require_subcommand(1);

    std::string config_path, out, json_out;
    std::vector<double> alphas;
    std::optional<std::uint64_t> seed;
    std::optional<EngineKind> engine;
    std::string engine_name;

    CLI::App* analyze_cmd = app.add_subcommand(
        "analyze", "Run a sensitivity analysis from a scenario config");
    analyze_cmd->add_option("--config", config_path, "scenario file (key = value)")
        ->required();
    analyze_cmd->add_option("--out", out, "output CSV path (default: stdout)");
    analyze_cmd->add_option("--json", json_out, "also write a JSON report");
    analyze_cmd->add_option("--engine", engine_name, "override: cf, panjer or mc")
        ->check(CLI::IsMember({"cf", "panjer", "mc"}));
    std::uint64_t seed_raw = 0;
    CLI::Option* seed_opt =
        analyze_cmd->add_option("--seed", seed_raw, "Monte Carlo seed override");
    analyze_cmd->add_option("--alpha", alphas,
                            "confidence level override (repeatable)");

    std::string t_out[5];
    CLI::App* table_cmd[4];
    const char* table_desc[] = {
        "Expected-loss regime study (two add-on intensity variants)",
        "Sub-linear power regime study",
        "Equal-tail-index study over the add-on scale",
        "Dominant add-on study (posterior anchored at the add-on VaR)"};
    for (int i = 0; i < 4; ++i) {
        table_cmd[i] = app.add_subcommand("table" + std::to_string(i + 1),
                                          table_desc[i]);
        table_cmd[i]->add_option("--out", t_out[i], "output CSV path");
    }
    CLI::App* figure_cmd = app.add_subcommand(
        "figure1", "Approximation error versus confidence level");
    figure_cmd->add_option("--out", t_out[4], "output CSV path");

    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "Quick numerical consistency checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze_cmd->parsed()) {
            if (!engine_name.empty()) {
                engine = engine_name == "cf"       ? EngineKind::cf_inversion
                         : engine_name == "panjer" ? EngineKind::panjer
                                                   : EngineKind::monte_carlo;
            }
            if (seed_opt->count() > 0) seed = seed_raw;
            return run_analyze(config_path, out, json_out, engine, seed, alphas);
        }
        if (table_cmd[0]->parsed()) return run_table_el(t_out[0]);
        if (table_cmd[1]->parsed()) return run_table_power(t_out[1]);
        if (table_cmd[2]->parsed()) return run_table_equal(t_out[2]);
        if (table_cmd[3]->parsed()) return run_table_mirror(t_out[3]);
        if (figure_cmd->parsed()) return run_figure(t_out[4]);
        if (selftest_cmd->parsed()) return run_selftest();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const AccuracyError& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return 3;
    } catch (const TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
