#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dd {

/// Malformed configuration or command line; the CLI maps this to exit 64.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key = value text format with [section] headers and '#' comments.
/// Parsing is strict: sections and keys outside the documented schema are
/// rejected, as are duplicate keys.
struct RunConfig {
    std::string raw;
    std::map<std::string, std::map<std::string, std::string>> sections;

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key, const std::string& fallback) const;
    std::string require(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key, double fallback) const;
    double require_number(const std::string& section, const std::string& key) const;
    int integer(const std::string& section, const std::string& key, int fallback) const;
    bool flag(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> number_list(const std::string& section, const std::string& key) const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace dd
