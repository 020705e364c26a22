#include "opvar/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace opvar {

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string finite_or_na(double v, std::string& flag, const std::string& reason) {
    if (std::isfinite(v)) return csv_number(v);
    if (!reason.empty() && flag.find(reason) == std::string::npos) {
        if (!flag.empty()) flag += "; ";
        flag += reason;
    }
    return "NA";
}

} // namespace

std::string analyze_csv(const std::vector<SensitivityReport>& reports) {
    std::ostringstream out;
    out << "alpha,var_L,var_S,var_LS,delta_var,approx,error,regime,k,engine,"
           "achieved_tol,flag\n";
    for (const SensitivityReport& r : reports) {
        std::string flag = r.warning;
        if (r.failed) {
            out << csv_number(r.alpha) << ",NA,NA,NA,NA,NA,NA,"
                << to_string(r.regime.kind) << ',' << csv_number(r.k) << ','
                << to_string(r.engine) << ",NA,"
                << csv_field(flag.empty() ? "failed" : flag) << '\n';
            continue;
        }
        out << csv_number(r.alpha) << ','
            << finite_or_na(r.var_L, flag, "var_L not finite") << ','
            << (r.var_S ? finite_or_na(*r.var_S, flag, "var_S not finite") : "NA") << ','
            << finite_or_na(r.var_LS, flag, "var_LS not finite") << ','
            << finite_or_na(r.delta_var, flag, "delta_var not finite") << ','
            << finite_or_na(r.approx, flag, "approx not finite") << ','
            << finite_or_na(r.error, flag, "error undefined") << ','
            << to_string(r.regime.kind) << ','
            << csv_number(r.k) << ','
            << to_string(r.engine) << ','
            << csv_number(r.achieved_tol) << ','
            << csv_field(flag) << '\n';
    }
    return out.str();
}

std::string analyze_json(const std::vector<SensitivityReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SensitivityReport& r : reports) {
        nlohmann::json j;
        j["alpha"] = r.alpha;
        j["regime"] = to_string(r.regime.kind);
        j["beta"] = r.regime.beta;
        j["gamma"] = r.regime.gamma;
        j["k"] = r.k;
        j["engine"] = to_string(r.engine);
        j["failed"] = r.failed;
        if (!r.warning.empty()) j["warning"] = r.warning;
        if (!r.failed) {
            j["var_L"] = r.var_L;
            j["var_LS"] = r.var_LS;
            if (r.var_S) j["var_S"] = *r.var_S;
            j["delta_var"] = r.delta_var;
            j["approx"] = r.approx;
            if (std::isfinite(r.error)) j["error"] = r.error;
            j["mirror_convention"] = r.mirror_convention;
            j["achieved_tol"] = r.achieved_tol;
            if (r.ci_halfwidth > 0.0) j["ci_halfwidth"] = r.ci_halfwidth;
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.flush())
            throw std::runtime_error("write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
}

} // namespace opvar
