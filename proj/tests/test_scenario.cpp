#include <doctest.h>

#include "opvar/scenario.hpp"

using namespace opvar;

namespace {

const char* kGood = R"(
# add-on study
lambda_L = 10
xi_L = 2.0
sigma_L = 10000
lambda_S = 10
xi_S = 1.0
sigma_S = 10000   # currency units
alpha = 0.999
engine = cf
abs_cdf_tol = 1e-13
)";

} // namespace

TEST_CASE("well-formed config parses") {
    const ScenarioConfig cfg = parse_scenario(kGood);
    CHECK(cfg.lambda_L == 10.0);
    CHECK(cfg.xi_S == 1.0);
    CHECK(cfg.alphas == std::vector<double>{0.999});
    CHECK(cfg.engine.engine_kind == EngineKind::cf_inversion);
    CHECK(cfg.engine.abs_cdf_tol == 1e-13);
    const RiskPair pair = cfg.make_pair();
    CHECK(pair.dependence == DependenceKind::independent);
}

TEST_CASE("alpha grid") {
    std::string text(kGood);
    text.replace(text.find("alpha = 0.999"), 13, "alpha_grid = 0.99,0.999");
    const ScenarioConfig cfg = parse_scenario(text);
    CHECK(cfg.alphas == std::vector<double>{0.99, 0.999});
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_scenario(std::string(kGood) + "\nbogus_key = 1\n"),
                    ConfigError);
}

TEST_CASE("duplicate keys are rejected") {
    CHECK_THROWS_AS(parse_scenario(std::string(kGood) + "\nxi_L = 1.0\n"),
                    ConfigError);
}

TEST_CASE("numeric constraints propagate as config errors") {
    std::string text(kGood);
    text.replace(text.find("xi_L = 2.0"), 10, "xi_L = 0.0");
    CHECK_THROWS_AS(parse_scenario(text), ConfigError);

    std::string text2(kGood);
    text2.replace(text2.find("alpha = 0.999"), 13, "alpha = 1.5");
    CHECK_THROWS_AS(parse_scenario(text2), ConfigError);
}

TEST_CASE("missing required keys are reported") {
    CHECK_THROWS_AS(parse_scenario("lambda_L = 1\n"), ConfigError);
}

TEST_CASE("malformed lines are reported with numbers") {
    CHECK_THROWS_AS(parse_scenario("lambda_L 10\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("lambda_L = ten\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("alpha = \n"), ConfigError);
}

TEST_CASE("scale mixture configuration") {
    std::string text(kGood);
    text += "dependence = scale_mixture\ng_a = 1.0\ng_b = 2.0\ng_c0 = 1.0\ng_c1 = 0.5\n";
    const ScenarioConfig cfg = parse_scenario(text);
    const RiskPair pair = cfg.make_pair();
    CHECK(pair.dependence == DependenceKind::scale_mixture);
    REQUIRE(pair.g.has_value());
    CHECK((*pair.g)(0.0) == 1.0);
    CHECK((*pair.g)(10.0) == 2.0);

    // invalid bounds surface as config errors
    std::string bad(text);
    bad.replace(bad.find("g_a = 1.0"), 9, "g_a = 0.0");
    CHECK_THROWS_AS(parse_scenario(bad), ConfigError);
}

TEST_CASE("count-valued keys reject negatives and fractions") {
    CHECK_THROWS_AS(parse_scenario(std::string(kGood) + "mc_samples = -5\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario(std::string(kGood) + "max_segments = 2.5\n"),
                    ConfigError);
    CHECK_NOTHROW(parse_scenario(std::string(kGood) + "mc_samples = 1e6\n"));
}

TEST_CASE("alpha and alpha_grid are mutually exclusive") {
    CHECK_THROWS_AS(parse_scenario(std::string(kGood) + "alpha_grid = 0.9,0.99\n"),
                    ConfigError);
}
