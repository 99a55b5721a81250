#include "hk/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "hk/errors.hpp"

namespace hk::report {
namespace {

using Json = nlohmann::ordered_json;

// nlohmann writes non-finite numbers as null; read them back as NaN.
double number(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

Json config_json(const verify::ScanConfig& c) {
  Json j;
  j["k_max"] = c.k_max;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["rule_scale"] = c.rule_scale;
  j["tolerance"] = c.tolerance ? Json(*c.tolerance) : Json(nullptr);
  j["n"] = c.n;
  j["delta"] = c.delta;
  j["negative_controls"] = c.negative_controls;
  return j;
}

verify::ScanConfig config_from(const Json& j) {
  verify::ScanConfig c;
  c.k_max = j.at("k_max").get<int>();
  c.trials = j.at("trials").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.rule_scale = j.at("rule_scale").get<int>();
  if (!j.at("tolerance").is_null()) c.tolerance = j.at("tolerance").get<double>();
  c.n = j.at("n").get<int>();
  c.delta = number(j.at("delta"));
  c.negative_controls = j.at("negative_controls").get<bool>();
  return c;
}

}  // namespace

std::string_view version() { return "0.3.0"; }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string emit_csv(const verify::EstimateReport& report) {
  std::string out = "label,ratio,tolerance,passed\r\n";
  for (const auto& s : report.samples) {
    out += csv_field(s.label);
    out += ',';
    out += format_double(s.ratio);
    out += ',';
    out += format_double(s.tolerance);
    out += ',';
    out += s.passed ? "true" : "false";
    out += "\r\n";
  }
  return out;
}

std::string emit_json(const RunManifest& m) {
  Json j;
  j["version"] = m.version;
  j["command"] = m.command;
  j["config"] = config_json(m.config);
  Json reports = Json::array();
  for (std::size_t i = 0; i < m.reports.size(); ++i) {
    const auto& r = m.reports[i];
    Json rj;
    rj["estimate_id"] = verify::to_string(r.id);
    rj["name"] = r.name;
    Json params = Json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    rj["parameters"] = std::move(params);
    Json samples = Json::array();
    for (const auto& s : r.samples) {
      Json sj;
      sj["label"] = s.label;
      sj["ratio"] = s.ratio;
      sj["tolerance"] = s.tolerance;
      sj["passed"] = s.passed;
      samples.push_back(std::move(sj));
    }
    rj["samples"] = std::move(samples);
    rj["sup_ratio"] = r.sup_ratio;
    rj["tolerance"] = r.tolerance;
    rj["status"] = verify::to_string(r.status);
    rj["passed"] = r.passed();
    rj["note"] = r.note;
    rj["wall_seconds"] = i < m.wall_seconds.size() ? m.wall_seconds[i] : 0.0;
    reports.push_back(std::move(rj));
  }
  j["reports"] = std::move(reports);
  return j.dump(2) + "\n";
}

RunManifest parse_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    RunManifest m;
    m.version = j.at("version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.config = config_from(j.at("config"));
    for (const Json& rj : j.at("reports")) {
      verify::EstimateReport r;
      const auto id = verify::estimate_id_from_string(rj.at("estimate_id").get<std::string>());
      if (!id) throw InputError("unknown estimate id");
      r.id = *id;
      r.name = rj.at("name").get<std::string>();
      for (const auto& [k, v] : rj.at("parameters").items()) r.parameters.emplace_back(k, v.get<std::string>());
      for (const Json& sj : rj.at("samples")) {
        r.samples.push_back({sj.at("label").get<std::string>(), number(sj.at("ratio")),
                             number(sj.at("tolerance")), sj.at("passed").get<bool>()});
      }
      r.sup_ratio = number(rj.at("sup_ratio"));
      r.tolerance = number(rj.at("tolerance"));
      const auto st = verify::status_from_string(rj.at("status").get<std::string>());
      if (!st) throw InputError("unknown status");
      r.status = *st;
      r.note = rj.at("note").get<std::string>();
      m.reports.push_back(std::move(r));
      m.wall_seconds.push_back(number(rj.at("wall_seconds")));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace hk::report
