// lieloc: weak measurement of a spectrum-generating algebra.
//
//   lieloc simulate      single sNLSE trajectory -> CSV
//   lieloc ensemble      trajectory average vs. Lindblad solution -> CSV + JSON
//   lieloc theorem-scan  Haar scan of Tr{M^2} and the localization drift -> JSON
//   lieloc bounds        Delta_min, c_H, roots and weights -> JSON
//
// Exit codes: 0 success, 1 usage/config error, 2 scientific check failed.
// Thread count: LIELOC_THREADS. Kernel selection: LIELOC_SIMD=scalar forces
// the reference kernels.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lieloc/harness.hpp"

namespace {

struct Options {
  std::string algebra = "su2:two_j=2";
  std::string ham;
  std::string init = "haar";
  std::string dump_algebra;
};

std::vector<double> parse_ham(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size() && !text.empty()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw lieloc::ConfigError("invalid --ham entry '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void add_common(CLI::App* cmd, lieloc::ExperimentConfig& cfg, Options& opt) {
  cmd->add_option("--algebra", opt.algebra, "Algebra: su2:two_j=N | suN:n=N")->capture_default_str();
  cmd->add_option("--gamma", cfg.gamma, "Measurement strength")->capture_default_str();
  cmd->add_option("--dt", cfg.dt, "Time step")->capture_default_str();
  cmd->add_option("--time", cfg.time, "Total time T")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  cmd->add_option("--stride", cfg.record_stride, "Record every N steps")->capture_default_str();
  cmd->add_option("--ham", opt.ham, "Hamiltonian coefficients a1,a2,...,aK (default H = 0)");
  cmd->add_option("--out", cfg.out_path, "Output path ('-' or empty: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak measurement of a spectrum-generating Lie algebra: sNLSE trajectories, Lindblad ensembles, "
               "coherent-state bounds"};
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);

  lieloc::ExperimentConfig cfg;
  Options opt;

  auto* simulate = app.add_subcommand("simulate", "Integrate one sNLSE trajectory and write observables as CSV");
  add_common(simulate, cfg, opt);
  simulate->add_option("--init", opt.init, "Initial state: haar | highest")->capture_default_str();

  auto* ensemble = app.add_subcommand("ensemble", "Average trajectories and compare with the Lindblad solution");
  add_common(ensemble, cfg, opt);
  ensemble->add_option("--init", opt.init, "Initial state: haar | highest")->capture_default_str();
  ensemble->add_option("--traj", cfg.n_traj, "Number of trajectories")->capture_default_str();
  ensemble->add_option("--bound", cfg.distance_bound, "Maximum allowed Frobenius distance")->capture_default_str();
  ensemble->add_option("--summary", cfg.summary_path, "JSON summary path ('-' or empty: stdout)");

  auto* scan = app.add_subcommand("theorem-scan", "Haar scan of Tr{M^2} and drift against the coherent-state value");
  add_common(scan, cfg, opt);
  scan->add_option("--samples", cfg.scan_samples, "Haar samples")->capture_default_str();
  scan->add_option("--gcs-samples", cfg.gcs_samples, "Generated coherent states")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "Print Delta_min, c_H, c_adj, roots and weights");
  add_common(bounds, cfg, opt);
  bounds->add_option("--dump-algebra", opt.dump_algebra, "Write generators and structure constants as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? lieloc::exit_code::ok : lieloc::exit_code::usage;
  }

  try {
    cfg.algebra = lieloc::parse_algebra_spec(opt.algebra);
    cfg.hamiltonian = parse_ham(opt.ham);
    if (opt.init == "haar") {
      cfg.initial = lieloc::InitialState::haar;
    } else if (opt.init == "highest") {
      cfg.initial = lieloc::InitialState::highest_weight;
    } else {
      throw lieloc::ConfigError("--init must be haar or highest");
    }
  } catch (const lieloc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lieloc::exit_code::usage;
  }

  if (simulate->parsed()) return lieloc::cmd_simulate(cfg, std::cout, std::cerr);
  if (ensemble->parsed()) return lieloc::cmd_ensemble(cfg, std::cout, std::cerr);
  if (scan->parsed()) return lieloc::cmd_theorem_scan(cfg, std::cout, std::cerr);
  return lieloc::cmd_bounds(cfg, std::cout, std::cerr, opt.dump_algebra);
}
