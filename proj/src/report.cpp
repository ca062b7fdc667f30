#include "dd/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dd {

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string config_hash_hex(const std::string& raw_config) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : raw_config) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string report_to_json(const EstimateReport& report, const std::string& command,
                           const std::string& config_hash, int grid_n, int grid_points, double grid_half_width,
                           std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["schema"] = "dd-report/1";
    j["command"] = command;
    j["config_hash"] = config_hash;
    j["id"] = report.id;
    j["description"] = report.description;
    j["seed"] = seed;
    j["grid"] = {{"n", grid_n}, {"N", grid_points}, {"R", grid_half_width}};
    j["window"] = {report.window_lo, report.window_hi};

    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.params) params[key] = value;
    j["params"] = params;

    nlohmann::ordered_json ratios = nlohmann::ordered_json::array();
    for (const auto& r : report.ratios)
        ratios.push_back({{"member", r.member}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"ratio", r.ratio}});
    j["ratios"] = ratios;

    j["observed"] = report.observed;
    j["bound"] = {{"kind", report.bound.kind}, {"value", report.bound.value}};
    if (report.ladder.enabled) {
        j["ladder"] = {{"base", report.ladder.base},
                       {"spatial_refined", report.ladder.spatial_refined},
                       {"time_refined", report.ladder.time_refined},
                       {"spatial_drift", report.ladder.spatial_drift()},
                       {"time_drift", report.ladder.time_drift()}};
    } else {
        j["ladder"] = nullptr;
    }
    j["diagnostics"] = {{"boundary_mass_max", report.boundary_mass_max},
                        {"tail_decay_max", report.tail_decay_max}};
    j["verdict"] = to_string(report.verdict);
    j["note"] = report.note;
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << content;
}

void write_ratios_csv(const EstimateReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "id,member,lhs,rhs,ratio\n";
    for (const auto& r : report.ratios)
        out << report.id << ',' << r.member << ',' << format_sci(r.lhs) << ',' << format_sci(r.rhs) << ','
            << format_sci(r.ratio) << "\n";
}

}  // namespace dd
