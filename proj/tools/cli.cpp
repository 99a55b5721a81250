#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hk/errors.hpp"
#include "hk/report.hpp"
#include "hk/verify.hpp"

namespace hk::cli {

namespace fs = std::filesystem;
using verify::EstimateReport;
using verify::ScanConfig;
using verify::Status;

namespace {

struct Task {
  std::string name;
  std::function<EstimateReport()> run;
};

struct Options {
  ScanConfig cfg;
  bool n_given = false;
  bool delta_given = false;
  bool kmax_given = false;
  std::string out = "hk_out";
  std::string format = "csv";
  int jobs = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ScanConfig with_kmax(const Options& o, int fallback) {
  ScanConfig c = o.cfg;
  if (!o.kmax_given) c.k_max = fallback;
  return c;
}

std::vector<int> all_axes(int n) {
  std::vector<int> a(n);
  for (int i = 0; i < n; ++i) a[i] = i;
  return a;
}

void add_kato(std::vector<Task>& tasks, const Options& o, int n, double delta) {
  if (n < 1 || n > 3) throw UsageError("kato: --n must be 1, 2 or 3");
  if (!(delta > 0.0)) throw UsageError("kato: --delta must be positive");
  const bool admissible = (n == 1 && delta < 0.5) || (n == 2 && delta < 1.0) || (n == 3 && delta <= 1.0);
  if (!admissible) {
    if (n == 2 && delta == 1.0 && o.cfg.negative_controls) {
      tasks.push_back({"negative_control", [c = o.cfg] { return verify::check_negative_control(c); }});
      return;
    }
    throw UsageError("kato: weight |x|^-2delta with n = " + std::to_string(n) + " and delta = " +
                     report::format_double(delta) + " is not integrable for general states" +
                     (n == 2 && delta == 1.0 ? " (pass --negative-controls to run the divergence demo)" : ""));
  }
  tasks.push_back({"kato", [c = o.cfg, n, delta] { return verify::check_kato(c, n, delta, all_axes(n)); }});
}

void add_identities(std::vector<Task>& t, const Options& o) {
  t.push_back({"appendix", [c = o.cfg] { return verify::check_appendix_identities(c); }});
  t.push_back({"odd", [c = o.cfg] { return verify::check_odd_identity(c); }});
  t.push_back({"radial", [c = o.cfg] { return verify::check_radial_3d_identity(c); }});
}

void add_kernel(std::vector<Task>& t, const Options& o) {
  std::vector<int> ns = o.n_given ? std::vector<int>{o.cfg.n} : std::vector<int>{2, 3};
  for (int n : ns) {
    if (n < 1 || n > 3) throw UsageError("kernel: --n must be 1, 2 or 3");
    const ScanConfig c = with_kmax(o, n == 2 ? 40 : 30);
    t.push_back({"kernel_bound", [c, n] { return verify::check_kernel_bound(c, n); }});
  }
  const int n = o.n_given ? o.cfg.n : 3;
  std::vector<double> deltas = o.delta_given ? std::vector<double>{o.cfg.delta} : std::vector<double>{0.5, 1.0};
  for (double d : deltas) {
    if (!(d > 0.0) || d > 1.0 || (n < 3 && d >= n / 2.0)) {
      throw UsageError("kernel: operator norm needs 0 < delta < n/2 and delta <= 1");
    }
    t.push_back({"operator_norm", [c = o.cfg, n, d] { return verify::check_operator_norm(c, n, d); }});
  }
}

void add_sobolev(std::vector<Task>& t, const Options& o) {
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    t.push_back({"sobolev", [c = o.cfg, s] { return verify::check_hermite_sobolev(c, s); }});
  }
}

std::vector<Task> select(const std::string& cmd, const Options& o) {
  std::vector<Task> t;
  auto norms = [&] {
    t.push_back({"norms", [c = with_kmax(o, 40)] { return verify::check_antideriv_norms(c); }});
  };
  auto morawetz = [&] { t.push_back({"morawetz", [c = o.cfg] { return verify::check_morawetz_2d(c); }}); };
  auto even3d = [&] { t.push_back({"even3d", [c = o.cfg] { return verify::check_even_3d(c); }}); };
  auto collapse = [&] { t.push_back({"collapse", [c = o.cfg] { return verify::check_collapse_9d(c); }}); };

  if (cmd == "norms") {
    norms();
  } else if (cmd == "identities") {
    add_identities(t, o);
  } else if (cmd == "kato") {
    add_kato(t, o, o.n_given ? o.cfg.n : 3, o.delta_given ? o.cfg.delta : 1.0);
  } else if (cmd == "kernel") {
    add_kernel(t, o);
  } else if (cmd == "morawetz") {
    morawetz();
  } else if (cmd == "even3d") {
    even3d();
  } else if (cmd == "sobolev") {
    add_sobolev(t, o);
  } else if (cmd == "collapse") {
    collapse();
  } else if (cmd == "all") {
    Options fixed = o;
    fixed.n_given = false;
    fixed.delta_given = false;
    norms();
    add_identities(t, o);
    add_kato(t, fixed, 3, 1.0);
    add_kato(t, fixed, 3, 0.5);
    add_kato(t, fixed, 2, 0.5);
    add_kernel(t, fixed);
    morawetz();
    even3d();
    add_sobolev(t, o);
    collapse();
    if (o.cfg.negative_controls) {
      t.push_back({"negative_control", [c = o.cfg] { return verify::check_negative_control(c); }});
    }
  }
  return t;
}

// Errors thrown from inside a check become a report rather than aborting the run.
EstimateReport run_guarded(const Task& task) {
  try {
    return task.run();
  } catch (const ToleranceError& e) {
    EstimateReport r;
    r.name = task.name;
    r.status = Status::inconclusive;
    r.note = e.what();
    return r;
  } catch (const std::exception& e) {
    EstimateReport r;
    r.name = task.name;
    r.status = Status::failed;
    r.note = e.what();
    return r;
  }
}

int default_jobs() {
  if (const char* env = std::getenv("HK_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

bool write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) return false;
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  return static_cast<bool>(f.flush());
}

bool prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir, ec)) return false;
  const fs::path probe = dir / ".hkato_write_probe";
  if (!write_file(probe, "")) return false;
  fs::remove(probe, ec);
  return true;
}

}  // namespace

int run(int argc, const char* const* argv) {
  Options o;
  CLI::App app{"Hermite-spectral smoothing-estimate verification harness", "hkato"};
  app.set_version_flag("--version", std::string(report::version()));
  app.require_subcommand(1, 1);

  auto* n_opt = app.add_option("--n", o.cfg.n, "Spatial dimension (kato: 1..3, default 3)")->check(CLI::Range(1, 9));
  auto* d_opt = app.add_option("--delta", o.cfg.delta, "Weight exponent delta (default 1)");
  auto* k_opt = app.add_option("--kmax", o.cfg.k_max,
                               "Highest level scanned (default 20; norms 40; kernel 40 for n=2, 30 for n=3)")
                    ->check(CLI::Range(0, 200));
  app.add_option("--trials", o.cfg.trials, "Random states per check")->default_val(16)->check(CLI::Range(1, 100000));
  app.add_option("--seed", o.cfg.seed, "Random seed")->default_val(42);
  app.add_option("--rule-scale", o.cfg.rule_scale, "Multiplier on every quadrature node count")
      ->default_val(1)
      ->check(CLI::Range(1, 64));
  app.add_option("--tol", o.cfg.tolerance,
                 "Override the per-check tolerance or bound. Defaults: identities 1e-8..1e-12, "
                 "kato 10 (n=3) or 10*Gamma(1-delta) (n=2), kernel 1.5, operator norm 10, morawetz 10, "
                 "even3d 20*pi, sobolev max(2, 2^s), collapse 1");
  app.add_option("--out", o.out, "Output directory")->default_val("hk_out");
  app.add_option("--format", o.format, "Per-check table format; manifest.json is always written")
      ->default_val("csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--negative-controls", o.cfg.negative_controls, "Run divergence demonstrations");
  auto* jobs_opt = app.add_option("--jobs", o.jobs, "Worker threads (default: HK_JOBS or available cores)")
                       ->check(CLI::Range(1, 1024));
  app.fallthrough(true);

  const char* const names[][2] = {
      {"norms", "Antiderivative norm tables"},
      {"identities", "Exact identities: appendix relations, odd 1D and radial 3D time averages"},
      {"kato", "Kato smoothing ratio scan for --n, --delta"},
      {"kernel", "Projection-kernel diagonal bound and singularized operator norms"},
      {"morawetz", "2D Morawetz sup-in-space ratio"},
      {"even3d", "3D estimate for fully even states and the index-cover count"},
      {"sobolev", "Bessel vs Hermite Sobolev norm comparison"},
      {"collapse", "Collapsing-variable trace estimate in 9D"},
      {"all", "Every check above"},
  };
  for (const auto& [name, help] : names) app.add_subcommand(name, help)->fallthrough(true);

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }
  o.n_given = n_opt->count() > 0;
  o.delta_given = d_opt->count() > 0;
  o.kmax_given = k_opt->count() > 0;
  if (jobs_opt->count() == 0) o.jobs = default_jobs();

  const std::string cmd = app.get_subcommands().front()->get_name();
  std::vector<Task> tasks;
  try {
    tasks = select(cmd, o);
  } catch (const UsageError& e) {
    std::cerr << "hkato: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const fs::path out(o.out);
  if (!prepare_out_dir(out)) {
    std::cerr << "hkato: cannot write to output directory " << out << "\n";
    return kExitIo;
  }

  std::vector<EstimateReport> reports(tasks.size());
  std::vector<double> seconds(tasks.size(), 0.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      const auto t0 = std::chrono::steady_clock::now();
      reports[i] = run_guarded(tasks[i]);
      seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  {
    const int nthreads = std::max(1, std::min<int>(o.jobs, static_cast<int>(tasks.size())));
    std::vector<std::jthread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
  }

  report::RunManifest m;
  m.version = std::string(report::version());
  for (int i = 1; i < argc; ++i) {
    if (i > 1) m.command += ' ';
    m.command += argv[i];
  }
  m.config = o.cfg;
  m.reports = reports;
  m.wall_seconds = seconds;

  bool io_ok = write_file(out / "manifest.json", report::emit_json(m));
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (o.format == "csv") {
      io_ok = write_file(out / (reports[i].name + ".csv"), report::emit_csv(reports[i])) && io_ok;
    } else {
      report::RunManifest one = m;
      one.reports = {reports[i]};
      one.wall_seconds = {seconds[i]};
      io_ok = write_file(out / (reports[i].name + ".json"), report::emit_json(one)) && io_ok;
    }
  }

  bool failed = false;
  bool inconclusive = false;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    std::printf("%-34s %-12s sup=%-12.6g %8.2fs%s%s\n", r.name.c_str(), std::string(to_string(r.status)).c_str(),
                r.sup_ratio, seconds[i], r.note.empty() ? "" : "  ", r.note.c_str());
    failed = failed || r.status == Status::failed;
    inconclusive = inconclusive || r.status == Status::inconclusive;
  }
  std::fflush(stdout);
  if (!io_ok) {
    std::cerr << "hkato: failed writing results under " << out << "\n";
    return kExitIo;
  }
  if (failed) return kExitFailed;
  if (inconclusive) return kExitInconclusive;
  return kExitOk;
}

}  // namespace hk::cli
