#include "opvar/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace opvar {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has a non-numeric value '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config: trailing characters after the number in '" + key + "'");
    return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19)
        throw ConfigError("config: key '" + key + "' needs a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_number_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("config: empty element in list '" + key + "'");
        out.push_back(parse_number(key, item));
    }
    if (out.empty()) throw ConfigError("config: empty list for '" + key + "'");
    return out;
}

} // namespace

RiskPair ScenarioConfig::make_pair() const {
    try {
        CompoundCell l(lambda_L, xi_L, sigma_L);
        CompoundCell s(lambda_S, xi_S, sigma_S);
        if (dependence == DependenceKind::scale_mixture)
            return RiskPair(l, s, dependence, GSpec(g_a, g_b, g_c0, g_c1));
        return RiskPair(l, s);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ScenarioConfig parse_scenario(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: empty key or value on line " + std::to_string(lineno));
        if (kv.count(key))
            throw ConfigError("config: duplicate key '" + key + "'");
        kv[key] = value;
    }

    ScenarioConfig cfg;
    bool saw_alpha = false, saw_alpha_grid = false;
    for (const auto& [key, value] : kv) {
        if (key == "lambda_L") cfg.lambda_L = parse_number(key, value);
        else if (key == "xi_L") cfg.xi_L = parse_number(key, value);
        else if (key == "sigma_L") cfg.sigma_L = parse_number(key, value);
        else if (key == "lambda_S") cfg.lambda_S = parse_number(key, value);
        else if (key == "xi_S") cfg.xi_S = parse_number(key, value);
        else if (key == "sigma_S") cfg.sigma_S = parse_number(key, value);
        else if (key == "dependence") {
            if (value == "independent") cfg.dependence = DependenceKind::independent;
            else if (value == "scale_mixture") cfg.dependence = DependenceKind::scale_mixture;
            else throw ConfigError("config: dependence must be independent or scale_mixture");
        }
        else if (key == "g_a") cfg.g_a = parse_number(key, value);
        else if (key == "g_b") cfg.g_b = parse_number(key, value);
        else if (key == "g_c0") cfg.g_c0 = parse_number(key, value);
        else if (key == "g_c1") cfg.g_c1 = parse_number(key, value);
        else if (key == "alpha") { cfg.alphas = {parse_number(key, value)}; saw_alpha = true; }
        else if (key == "alpha_grid") { cfg.alphas = parse_number_list(key, value); saw_alpha_grid = true; }
        else if (key == "engine") {
            if (value == "cf") cfg.engine.engine_kind = EngineKind::cf_inversion;
            else if (value == "panjer") cfg.engine.engine_kind = EngineKind::panjer;
            else if (value == "mc") cfg.engine.engine_kind = EngineKind::monte_carlo;
            else throw ConfigError("config: engine must be cf, panjer or mc");
        }
        else if (key == "abs_cdf_tol") cfg.engine.abs_cdf_tol = parse_number(key, value);
        else if (key == "quad_rel_tol") cfg.engine.quad_rel_tol = parse_number(key, value);
        else if (key == "max_segments")
            cfg.engine.max_segments = parse_count(key, value);
        else if (key == "panjer_step") cfg.engine.panjer_step = parse_number(key, value);
        else if (key == "panjer_cutoff") cfg.engine.panjer_cutoff = parse_number(key, value);
        else if (key == "mc_samples")
            cfg.engine.mc_samples = parse_count(key, value);
        else if (key == "mc_seed")
            cfg.engine.mc_seed = parse_count(key, value);
        else if (key == "out") cfg.out = value;
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    if (saw_alpha && saw_alpha_grid)
        throw ConfigError("config: give either alpha or alpha_grid, not both");

    for (const char* req : {"lambda_L", "xi_L", "sigma_L", "lambda_S", "xi_S", "sigma_S"})
        if (!kv.count(req)) throw ConfigError(std::string("config: missing key '") + req + "'");
    for (double a : cfg.alphas)
        if (!(a > 0.0 && a < 1.0))
            throw ConfigError("config: alpha levels must lie in (0, 1)");
    std::vector<double> sorted(cfg.alphas);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ConfigError("config: duplicate alpha levels");
    try {
        cfg.engine.validate();
        cfg.make_pair();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

} // namespace opvar
