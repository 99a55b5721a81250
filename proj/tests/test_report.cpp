#include <doctest.h>

#include <cmath>
#include <limits>

#include <json.hpp>

#include "hk/errors.hpp"
#include "hk/report.hpp"

using namespace hk;
using namespace hk::report;
using verify::EstimateReport;

namespace {

EstimateReport sample_report() {
  EstimateReport r;
  r.id = verify::EstimateId::kato_nd;
  r.name = "kato_n3_delta1";
  r.parameters = {{"seed", "42"}, {"axes", "0 1 2"}};
  r.samples = {{"k=00", 0.1 + 0.2, 10.0, true}, {"label, with \"quotes\"", 1.0 / 3.0, 1e-9, false}};
  r.sup_ratio = 1.0 / 3.0;
  r.tolerance = 10.0;
  r.status = verify::Status::failed;
  r.note = "line one\nline two";
  return r;
}

}  // namespace

TEST_CASE("17 significant digits round-trip") {
  for (double v : {0.1, 1.0 / 3.0, 2.0 / 3.0 * 1e-300, 12345.678901234567, -7e22}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.30000000000000004) == "0.30000000000000004");
}

TEST_CASE("CSV quoting follows RFC 4180") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("CSV table layout") {
  const std::string csv = emit_csv(sample_report());
  CHECK(csv.rfind("label,ratio,tolerance,passed\r\n", 0) == 0);
  CHECK(csv.find("k=00,0.30000000000000004,10,true\r\n") != std::string::npos);
  CHECK(csv.find("\"label, with \"\"quotes\"\"\",0.33333333333333331,1.0000000000000001e-09,false\r\n") != std::string::npos);
  EstimateReport empty;
  CHECK(emit_csv(empty) == "label,ratio,tolerance,passed\r\n");
}

TEST_CASE("empty manifest is valid JSON with an empty report list") {
  RunManifest m;
  m.version = std::string(version());
  const auto j = nlohmann::json::parse(emit_json(m));
  CHECK(j.at("reports").is_array());
  CHECK(j.at("reports").empty());
  CHECK(j.at("version") == "0.3.0");
  CHECK(j.contains("config"));
}

TEST_CASE("manifest round-trip is lossless") {
  RunManifest m;
  m.version = std::string(version());
  m.command = "kato --n 3";
  m.config.seed = 99;
  m.config.tolerance = 1e-7;
  m.reports = {sample_report(), sample_report()};
  m.reports[1].name = "other";
  m.reports[1].status = verify::Status::inconclusive;
  m.wall_seconds = {0.125, 3.75};
  const RunManifest back = parse_json(emit_json(m));
  CHECK(back == m);
  CHECK(emit_json(back) == emit_json(m));
}

TEST_CASE("non-finite ratios survive as NaN") {
  RunManifest m;
  m.version = "x";
  EstimateReport r = sample_report();
  r.samples[0].ratio = std::numeric_limits<double>::quiet_NaN();
  m.reports = {r};
  m.wall_seconds = {1.0};
  const RunManifest back = parse_json(emit_json(m));
  CHECK(std::isnan(back.reports[0].samples[0].ratio));
}

TEST_CASE("malformed manifest") {
  CHECK_THROWS_AS(parse_json("not json"), InputError);
  CHECK_THROWS_AS(parse_json("{\"version\": 1}"), InputError);
}
