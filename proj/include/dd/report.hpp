#pragma once

#include <string>

#include "dd/estimates.hpp"

namespace dd {

/// dd-report/1 JSON document for one verified estimate.
std::string report_to_json(const EstimateReport& report, const std::string& command,
                           const std::string& config_hash, int grid_n, int grid_points, double grid_half_width,
                           std::uint64_t seed);

void write_text_file(const std::string& path, const std::string& content);

/// Flat CSV of the per-member ratios ('.' decimal, 17 significant digits).
void write_ratios_csv(const EstimateReport& report, const std::string& path);

std::string config_hash_hex(const std::string& raw_config);

/// "%.16e" rendering used by every CSV writer.
std::string format_sci(double v);

}  // namespace dd
