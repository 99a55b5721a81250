#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using namespace hk::cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hkato_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "hkato");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("usage errors exit 64") {
  CHECK(run_args({}) == kExitUsage);
  CHECK(run_args({"frobnicate"}) == kExitUsage);
  CHECK(run_args({"norms", "--no-such-flag"}) == kExitUsage);
  CHECK(run_args({"norms", "--format", "xml"}) == kExitUsage);
  CHECK(run_args({"norms", "--kmax", "abc"}) == kExitUsage);
  CHECK(run_args({"norms", "identities"}) == kExitUsage);
}

TEST_CASE("help exits 0") { CHECK(run_args({"--help"}) == kExitOk); }

TEST_CASE("kato with n = 2, delta = 1 is refused unless negative controls are on") {
  const fs::path out = scratch("neg");
  CHECK(run_args({"kato", "--n", "2", "--delta", "1", "--out", out.string()}) == kExitUsage);
  CHECK_FALSE(fs::exists(out / "manifest.json"));
  CHECK(run_args({"kato", "--n", "2", "--delta", "1", "--negative-controls", "--out", out.string()}) == kExitOk);
  CHECK(fs::exists(out / "negative_control_n2_delta1.csv"));
}

TEST_CASE("unwritable output directory exits 74") {
  const fs::path blocker = scratch("blocker");
  fs::create_directories(blocker.parent_path());
  std::ofstream(blocker) << "file, not a directory";
  CHECK(run_args({"norms", "--out", (blocker / "sub").string()}) == kExitIo);
}

TEST_CASE("norms --kmax 40: every odd row is 2 within 1e-8") {
  const fs::path out = scratch("norms");
  REQUIRE(run_args({"norms", "--kmax", "40", "--out", out.string()}) == kExitOk);
  std::istringstream csv(slurp(out / "antideriv_norms.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "label,ratio,tolerance,passed\r");
  int odd_rows = 0;
  while (std::getline(csv, line)) {
    if (line.rfind("odd/", 0) != 0) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    CHECK(std::abs(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) - 2.0) <= 1e-8);
    ++odd_rows;
  }
  CHECK(odd_rows == 41 * 3);
  const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  CHECK(manifest.at("reports").size() == 1);
  CHECK(manifest.at("config").at("seed") == 42);
}

TEST_CASE("identities --seed 7 twice gives byte-identical CSVs") {
  const fs::path a = scratch("ida"), b = scratch("idb");
  REQUIRE(run_args({"identities", "--seed", "7", "--out", a.string()}) == kExitOk);
  REQUIRE(run_args({"identities", "--seed", "7", "--out", b.string(), "--jobs", "1"}) == kExitOk);
  int files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    if (e.path().extension() != ".csv") continue;
    ++files;
    CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
  }
  CHECK(files == 3);
}

TEST_CASE("json format writes one JSON file per check") {
  const fs::path out = scratch("json");
  REQUIRE(run_args({"morawetz", "--format", "json", "--out", out.string()}) == kExitOk);
  CHECK(fs::exists(out / "manifest.json"));
  const auto j = nlohmann::json::parse(slurp(out / "morawetz_2d.json"));
  CHECK(j.at("reports").at(0).at("status") == "passed");
}

TEST_CASE("a failing check exits 1 and is not masked by passing ones") {
  const fs::path out = scratch("fail");
  // A zero tolerance makes the identity checks fail, the bounded scans pass.
  CHECK(run_args({"identities", "--tol", "0", "--kmax", "4", "--trials", "2", "--out", out.string()}) == kExitFailed);
}
