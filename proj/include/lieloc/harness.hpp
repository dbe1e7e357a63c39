#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lieloc/algebra_rep.hpp"
#include "lieloc/cartan_roots.hpp"
#include "lieloc/dynamics.hpp"

namespace lieloc {

/// A scientific check failed (exit code 2).
class AssertionFailure : public Error {
 public:
  using Error::Error;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int assertion = 2;
}  // namespace exit_code

enum class AlgebraFamily { su2, suN };

struct AlgebraSpec {
  AlgebraFamily family = AlgebraFamily::su2;
  int parameter = 2;  // two_j for su2, N for suN

  std::string text() const;
};

/// Parses "su2:two_j=N" or "suN:n=N". Throws ConfigError.
AlgebraSpec parse_algebra_spec(std::string_view text);
AlgebraRep build_algebra(const AlgebraSpec& spec);

enum class InitialState { haar, highest_weight };

struct ExperimentConfig {
  AlgebraSpec algebra;
  std::vector<double> hamiltonian;  // empty means H = 0
  double gamma = 0.1;
  double dt = 1e-3;
  double time = 5.0;
  std::size_t n_traj = 2000;
  std::uint64_t seed = 1;
  std::uint64_t record_stride = 10;
  std::size_t scan_samples = 10000;
  std::size_t gcs_samples = 100;
  double distance_bound = 0.05;
  InitialState initial = InitialState::haar;
  std::string out_path;      // empty or "-" writes to stdout
  std::string summary_path;  // ensemble JSON summary; empty or "-" writes to stdout
  std::size_t threads = 0;   // 0 uses LIELOC_THREADS / hardware concurrency

  /// Throws ConfigError on non-finite values, gamma * dt > 0.01, or a total
  /// time that is not an integer number of steps.
  void validate() const;
  std::uint64_t steps() const;
  NoiseConfig noise() const;
  std::size_t thread_count() const;
};

PureState initial_state(const ExperimentConfig& cfg, const AlgebraRep& rep, const CartanData& cd);
Hamiltonian hamiltonian(const ExperimentConfig& cfg, const AlgebraRep& rep);

// --- simulate -------------------------------------------------------------

TrajectoryRecord run_simulate(const ExperimentConfig& cfg);

/// Header t,delta,purity,trace_m2,drift,x1..xK; 17 significant digits.
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec, std::size_t k);

// --- ensemble -------------------------------------------------------------

struct EnsembleReport {
  std::vector<double> times;
  std::vector<double> distances;  // Frobenius distance to the Lindblad solution
  double max_distance = 0.0;
  std::size_t n_traj = 0;
  bool passed = false;
};

EnsembleReport run_ensemble(const ExperimentConfig& cfg);

// --- theorem-scan ---------------------------------------------------------

struct ScanViolation {
  std::string kind;
  std::size_t index;
  double value;
  CVector amplitudes;
};

struct ScanReport {
  std::size_t samples = 0;
  double gcs_value = 0.0;  // Tr{M^2} at |Lambda>
  double delta_min = 0.0;
  double min_trace_m2 = 0.0;
  double mean_trace_m2 = 0.0;
  double max_trace_m2 = 0.0;
  double min_drift = 0.0;
  double max_drift = 0.0;
  std::size_t gcs_samples = 0;
  double gcs_max_abs_drift = 0.0;
  double gcs_max_trace_deviation = 0.0;
  std::optional<ScanViolation> violation;
};

inline constexpr double kScanTolerance = 1e-9;

ScanReport run_theorem_scan(const ExperimentConfig& cfg);

// --- JSON -----------------------------------------------------------------

nlohmann::json to_json(const ScanReport& report, const ExperimentConfig& cfg);
nlohmann::json to_json(const EnsembleReport& report, const ExperimentConfig& cfg);
nlohmann::json bounds_json(const ExperimentConfig& cfg);

/// Generators as row-major [re, im] pairs plus the structure-constant tensor.
nlohmann::json algebra_to_json(const AlgebraRep& rep);
nlohmann::json cartan_to_json(const CartanData& cd);

// --- commands -------------------------------------------------------------

/// Each runs a subcommand end to end, writes its outputs and returns the
/// process exit code. Errors are reported on `err`.
int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_ensemble(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_theorem_scan(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bounds(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err,
               const std::string& dump_algebra_path = {});

}  // namespace lieloc
