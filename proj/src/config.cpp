#include "dd/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace dd {
namespace {

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"", {"seed", "threads"}},
        {"grid", {"n", "N", "R"}},
        {"profile", {"kind", "alpha"}},
        {"profile_f", {"kind", "alpha"}},
        {"symbol", {"kind", "m"}},
        {"symbol_tilde", {"kind", "m"}},
        {"sigma", {"kind", "exponent", "axis"}},
        {"tau", {"kind", "exponent", "axis"}},
        {"chi", {"kind", "sign", "radius", "r_inner", "r_outer"}},
        {"estimate",
         {"id", "p", "q", "p2", "q2", "window_lo", "window_hi", "J", "beta", "alpha", "eps", "m", "s", "axis",
          "ladder", "summable"}},
        {"data", {"kind", "width", "k", "amplitude", "member", "t0", "t1", "J", "norm"}},
        {"solve", {"p", "mu_re", "mu_im", "T", "J", "tol", "max_iter", "dealias"}},
        {"sweep", {"parameter", "values"}},
        {"tolerances", {"bound_slack", "ladder_drift", "boundary", "equality", "equality_shrink"}},
        {"output", {"json", "csv", "trajectory_csv", "trajectory_json", "diagnostics_json", "diagnostics_csv"}},
    };
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

bool RunConfig::has(const std::string& section, const std::string& key) const {
    const auto it = sections.find(section);
    return it != sections.end() && it->second.count(key) > 0;
}

std::string RunConfig::get(const std::string& section, const std::string& key, const std::string& fallback) const {
    const auto it = sections.find(section);
    if (it == sections.end()) return fallback;
    const auto kit = it->second.find(key);
    return kit == it->second.end() ? fallback : kit->second;
}

std::string RunConfig::require(const std::string& section, const std::string& key) const {
    if (!has(section, key))
        throw ConfigError("missing required key '" + key + "' in section [" + section + "]");
    return sections.at(section).at(key);
}

double RunConfig::number(const std::string& section, const std::string& key, double fallback) const {
    if (!has(section, key)) return fallback;
    return require_number(section, key);
}

double RunConfig::require_number(const std::string& section, const std::string& key) const {
    const std::string v = require(section, key);
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' in [" + section + "] is not a number: " + v);
    }
    if (pos != v.size()) throw ConfigError("key '" + key + "' in [" + section + "] is not a number: " + v);
    return out;
}

int RunConfig::integer(const std::string& section, const std::string& key, int fallback) const {
    const double v = number(section, key, fallback);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("key '" + key + "' in [" + section + "] must be an integer");
    return i;
}

bool RunConfig::flag(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key, "");
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "' in [" + section + "] must be a boolean");
}

std::vector<double> RunConfig::number_list(const std::string& section, const std::string& key) const {
    std::vector<double> out;
    std::istringstream in(require(section, key));
    std::string tok;
    while (in >> tok) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "' in [" + section + "] holds a non-numeric entry: " + tok);
        }
    }
    return out;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    cfg.raw = text;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            if (schema().count(section) == 0)
                throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& allowed = schema().at(section);
        if (allowed.count(key) == 0)
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "' in section [" +
                              section + "]");
        if (cfg.sections[section].count(key) > 0)
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        cfg.sections[section][key] = value;
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace dd
