#pragma once
// Run manifest serialization: one JSON manifest per run plus one CSV table per
// check.  Field order is fixed so that equal runs produce equal bytes.

#include <string>
#include <string_view>
#include <vector>

#include "hk/verify.hpp"

namespace hk::report {

struct RunManifest {
  std::string version;
  std::string command;
  verify::ScanConfig config;
  std::vector<verify::EstimateReport> reports;
  std::vector<double> wall_seconds;  // parallel to reports

  bool operator==(const RunManifest&) const = default;
};

/// Tool version string.
std::string_view version();

/// %.17g
std::string format_double(double v);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

/// Header "label,ratio,tolerance,passed" then one row per sample.
std::string emit_csv(const verify::EstimateReport& report);

/// {version, command, config, reports: [...]} with reports carrying their wall time.
std::string emit_json(const RunManifest& manifest);

/// Inverse of emit_json; throws InputError on malformed input.
RunManifest parse_json(std::string_view text);

}  // namespace hk::report
