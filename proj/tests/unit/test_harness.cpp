#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lieloc/harness.hpp"

using namespace lieloc;
namespace fs = std::filesystem;

namespace {

ExperimentConfig quick(const std::string& algebra) {
  ExperimentConfig cfg;
  cfg.algebra = parse_algebra_spec(algebra);
  cfg.time = 0.2;
  cfg.record_stride = 20;
  cfg.n_traj = 4;
  cfg.scan_samples = 200;
  cfg.gcs_samples = 20;
  cfg.threads = 1;
  return cfg;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("lieloc_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI binary and returns its exit status, or -1 when unavailable.
int run_cli(const std::string& args) {
  const char* cli = std::getenv("LIELOC_CLI");
  if (cli == nullptr) return -1;
  const std::string cmd = std::string("'") + cli + "' " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("algebra spec parsing") {
  auto s = parse_algebra_spec("su2:two_j=4");
  CHECK(s.family == AlgebraFamily::su2);
  CHECK(s.parameter == 4);
  CHECK(s.text() == "su2:two_j=4");
  s = parse_algebra_spec("suN:n=3");
  CHECK(s.family == AlgebraFamily::suN);
  CHECK(s.parameter == 3);
  for (const char* bad : {"", "su2", "su2:two_j=", "su2:two_j=0", "su2:two_j=x", "su2:n=3", "suN:n=1", "so3:n=3",
                          "su2:two_j=2.5", "suN:two_j=3"})
    CHECK_THROWS_AS(parse_algebra_spec(bad), ConfigError);
}

TEST_CASE("experiment config validation") {
  auto cfg = quick("su2:two_j=2");
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.steps() == 200);
  auto bad = cfg;
  bad.gamma = 20.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.time = 0.2005;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.dt = std::nan("");
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.record_stride = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.hamiltonian = {1.0, 2.0};
  CHECK_THROWS_AS(run_simulate(bad), ConfigError);
}

TEST_CASE("simulate CSV schema") {
  for (const char* algebra : {"su2:two_j=2", "suN:n=3"}) {
    const auto cfg = quick(algebra);
    const auto rec = run_simulate(cfg);
    const std::size_t k = build_algebra(cfg.algebra).dim_algebra;
    std::ostringstream os;
    write_trajectory_csv(os, rec, k);
    std::istringstream in(os.str());
    std::string header;
    std::getline(in, header);
    auto cols = split(header);
    REQUIRE(cols.size() == 5 + k);
    CHECK(cols[0] == "t");
    CHECK(cols[1] == "delta");
    CHECK(cols[2] == "purity");
    CHECK(cols[3] == "trace_m2");
    CHECK(cols[4] == "drift");
    CHECK(cols[5] == "x1");
    CHECK(cols.back() == "x" + std::to_string(k));
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) {
      cols = split(line);
      CHECK(cols.size() == 5 + k);
      // full precision round-trips
      CHECK(std::stod(cols[1]) == rec.rows[rows].delta);
      ++rows;
    }
    CHECK(rows == rec.times.size());
    CHECK(rows == 11);
  }
}

TEST_CASE("simulate is byte-identical across runs") {
  auto cfg = quick("su2:two_j=3");
  cfg.hamiltonian = {0.3, -0.2, 0.5};
  std::ostringstream a, b, err;
  CHECK(cmd_simulate(cfg, a, err) == exit_code::ok);
  CHECK(cmd_simulate(cfg, b, err) == exit_code::ok);
  CHECK(a.str() == b.str());
  cfg.seed = 2;
  std::ostringstream c;
  CHECK(cmd_simulate(cfg, c, err) == exit_code::ok);
  CHECK(c.str() != a.str());
}

TEST_CASE("simulate with gamma = 0 keeps delta constant") {
  auto cfg = quick("su2:two_j=4");
  cfg.gamma = 0.0;
  cfg.time = 1.0;
  cfg.hamiltonian = {0.7, 0.1, -0.4};
  const auto rec = run_simulate(cfg);
  for (const auto& row : rec.rows) CHECK(std::abs(row.delta - rec.rows.front().delta) < 1e-6);
}

TEST_CASE("bounds JSON") {
  auto j = bounds_json(quick("su2:two_j=2"));
  CHECK(j["delta_min"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["c_h"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["c_adj"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["K"].get<int>() == 3);
  CHECK(j["d"].get<int>() == 3);

  const auto half = bounds_json(quick("su2:two_j=1"));
  CHECK(half["delta_min"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half["c_h"].get<double>() == doctest::Approx(0.75).epsilon(1e-12));
  const auto su2 = bounds_json(quick("suN:n=2"));
  for (const char* key : {"delta_min", "c_h", "c_adj", "normalization"})
    CHECK(su2[key].get<double>() == doctest::Approx(half[key].get<double>()).epsilon(1e-12));
  CHECK(su2["roots"] == half["roots"]);

  const auto su3 = bounds_json(quick("suN:n=3"));
  CHECK(su3["c_h"].get<double>() == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(su3["roots"].size() == 6);
  CHECK(su3["rank"].get<int>() == 2);
}

TEST_CASE("algebra dump round-trips the generators") {
  const auto rep = build_suN_fundamental(3);
  const auto j = algebra_to_json(rep);
  REQUIRE(j["generators"].size() == 8);
  const auto& g = j["generators"][1];  // lambda_2 / 2
  CHECK(g[0][1][0].get<double>() == 0.0);
  CHECK(g[0][1][1].get<double>() == doctest::Approx(-0.5));
  CHECK(j["adjoint_casimir"].get<double>() == doctest::Approx(3.0));
}

TEST_CASE("theorem scan") {
  auto cfg = quick("su2:two_j=3");
  auto r = run_theorem_scan(cfg);
  CHECK(r.gcs_value == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(r.min_trace_m2 >= r.gcs_value - kScanTolerance);
  CHECK(r.max_drift <= kScanTolerance);
  CHECK(r.gcs_max_abs_drift <= kScanTolerance);
  CHECK_FALSE(r.violation.has_value());

  r = run_theorem_scan(quick("su2:two_j=1"));
  CHECK(std::abs(r.min_trace_m2 - r.gcs_value) < 1e-10);
  CHECK(std::abs(r.mean_trace_m2 - r.gcs_value) < 1e-10);
  CHECK(std::abs(r.max_trace_m2 - r.gcs_value) < 1e-10);

  const auto j = to_json(run_theorem_scan(quick("suN:n=3")), quick("suN:n=3"));
  CHECK(j["passed"].get<bool>());
  CHECK(j["samples"].get<int>() == 200);
}

TEST_CASE("scans are independent of the thread count") {
  auto cfg = quick("su2:two_j=4");
  const auto a = run_theorem_scan(cfg);
  cfg.threads = 3;
  const auto b = run_theorem_scan(cfg);
  CHECK(a.min_trace_m2 == b.min_trace_m2);
  CHECK(a.mean_trace_m2 == b.mean_trace_m2);
  CHECK(a.max_drift == b.max_drift);
}

TEST_CASE("ensemble: single noiseless trajectory matches the master equation") {
  auto cfg = quick("su2:two_j=2");
  cfg.gamma = 0.0;
  cfg.n_traj = 1;
  cfg.hamiltonian = {0.2, 0.4, -0.1};
  const auto report = run_ensemble(cfg);
  CHECK(report.max_distance < 1e-10);
  CHECK(report.passed);
}

TEST_CASE("ensemble: bound violation maps to exit code 2") {
  auto cfg = quick("su2:two_j=2");
  cfg.distance_bound = 1e-12;
  cfg.n_traj = 2;
  std::ostringstream out, err;
  CHECK(cmd_ensemble(cfg, out, err) == exit_code::assertion);
  CHECK(err.str().find("exceeds bound") != std::string::npos);
  CHECK(nlohmann::json::parse(out.str())["passed"].get<bool>() == false);
}

TEST_CASE("command exit codes") {
  std::ostringstream out, err;
  auto cfg = quick("su2:two_j=2");
  cfg.time = 0.0005;
  CHECK(cmd_simulate(cfg, out, err) == exit_code::usage);
  cfg = quick("su2:two_j=2");
  cfg.out_path = "/nonexistent-dir/x.csv";
  CHECK(cmd_simulate(cfg, out, err) == exit_code::usage);
  CHECK(cmd_bounds(quick("suN:n=4"), out, err) == exit_code::ok);
}

TEST_CASE("CLI process") {
  if (std::getenv("LIELOC_CLI") == nullptr) {
    MESSAGE("LIELOC_CLI not set; skipping process checks");
    return;
  }
  const fs::path dir = scratch_dir();
  const std::string a = (dir / "a.csv").string();
  const std::string b = (dir / "b.csv").string();
  const std::string common = "--algebra su2:two_j=2 --time 0.1 --stride 10 --seed 5";
  CHECK(run_cli("simulate " + common + " --out " + a) == 0);
  CHECK(run_cli("simulate " + common + " --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).rfind("t,delta,purity,trace_m2,drift,x1,x2,x3\n", 0) == 0);

  CHECK(run_cli("bounds --algebra suN:n=3") == 0);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("") == 1);
  CHECK(run_cli("bounds --algebra so5") == 1);
  CHECK(run_cli("simulate --gamma 20") == 1);
  CHECK(run_cli("simulate --bogus") == 1);
  CHECK(run_cli("ensemble --algebra su2:two_j=2 --time 0.05 --traj 2 --bound 1e-12") == 2);
  CHECK(run_cli("theorem-scan --algebra su2:two_j=2 --samples 50 --gcs-samples 5") == 0);

  const std::string config = (dir / "run.ini").string();
  {
    std::ofstream cfg(config);
    cfg << "[simulate]\nalgebra=su2:two_j=2\ntime=0.1\nstride=10\nseed=5\n";
  }
  const std::string c = (dir / "c.csv").string();
  CHECK(run_cli("--config " + config + " simulate --out " + c) == 0);
  CHECK(slurp(c) == slurp(a));
  fs::remove_all(dir);
}
