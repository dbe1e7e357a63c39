#include "lieloc/harness.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>

#include "lieloc/observables.hpp"
#include "lieloc/parallel.hpp"
#include "lieloc/rng.hpp"

namespace lieloc {

using nlohmann::json;

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ConfigError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json vector_json(const RVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json complex_vector_json(const CVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v(i).real(), v(i).imag()});
  return arr;
}

json complex_matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json config_json(const ExperimentConfig& cfg) {
  return {{"algebra", cfg.algebra.text()}, {"gamma", cfg.gamma}, {"dt", cfg.dt},
          {"time", cfg.time},              {"seed", cfg.seed},   {"stride", cfg.record_stride}};
}

// Runs `write` against the file at `path`, or `fallback` when path is empty or "-".
void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + path + "'");
  write(file);
  if (!file) throw ConfigError("failed writing output file '" + path + "'");
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << '\n';
    return exit_code::assertion;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
}

}  // namespace

std::string AlgebraSpec::text() const {
  return family == AlgebraFamily::su2 ? "su2:two_j=" + std::to_string(parameter) : "suN:n=" + std::to_string(parameter);
}

AlgebraSpec parse_algebra_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ConfigError("algebra must look like su2:two_j=N or suN:n=N");
  const auto family = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  const auto eq = rest.find('=');
  if (eq == std::string_view::npos) throw ConfigError("algebra must look like su2:two_j=N or suN:n=N");
  const auto key = rest.substr(0, eq);
  const auto value = rest.substr(eq + 1);
  AlgebraSpec spec;
  if (family == "su2" && key == "two_j") {
    spec.family = AlgebraFamily::su2;
    spec.parameter = parse_int(value, "two_j");
    if (spec.parameter < 1) throw ConfigError("two_j must be >= 1");
  } else if (family == "suN" && key == "n") {
    spec.family = AlgebraFamily::suN;
    spec.parameter = parse_int(value, "n");
    if (spec.parameter < 2) throw ConfigError("n must be >= 2");
  } else {
    throw ConfigError("unsupported algebra '" + std::string(text) + "'");
  }
  return spec;
}

AlgebraRep build_algebra(const AlgebraSpec& spec) {
  return spec.family == AlgebraFamily::su2 ? build_su2_irrep(spec.parameter) : build_suN_fundamental(spec.parameter);
}

void ExperimentConfig::validate() const {
  for (double v : {gamma, dt, time, distance_bound})
    if (!std::isfinite(v)) throw ConfigError("numeric options must be finite");
  for (double a : hamiltonian)
    if (!std::isfinite(a)) throw ConfigError("Hamiltonian coefficients must be finite");
  noise().validate();
  if (time < 0.0) throw ConfigError("total time must be non-negative");
  const double ratio = time / dt;
  if (ratio > 1e15 || std::abs(ratio - std::round(ratio)) > 1e-6 * std::max(1.0, ratio))
    throw ConfigError("total time must be an integer multiple of dt");
  if (record_stride == 0) throw ConfigError("stride must be positive");
  if (n_traj == 0) throw ConfigError("trajectory count must be positive");
  if (scan_samples == 0) throw ConfigError("sample count must be positive");
}

std::uint64_t ExperimentConfig::steps() const { return static_cast<std::uint64_t>(std::llround(time / dt)); }

NoiseConfig ExperimentConfig::noise() const {
  NoiseConfig n;
  n.gamma = gamma;
  n.dt = dt;
  n.seed = seed;
  n.steps = steps();
  return n;
}

std::size_t ExperimentConfig::thread_count() const { return threads == 0 ? default_thread_count() : threads; }

PureState initial_state(const ExperimentConfig& cfg, const AlgebraRep& rep, const CartanData& cd) {
  if (cfg.initial == InitialState::highest_weight) return highest_weight_state(cd);
  return haar_random_state(static_cast<Eigen::Index>(rep.dim_hilbert), cfg.seed, rng::Stream::initial_state, 0);
}

Hamiltonian hamiltonian(const ExperimentConfig& cfg, const AlgebraRep& rep) {
  if (cfg.hamiltonian.empty()) return Hamiltonian::zero(rep);
  RVector a(static_cast<Eigen::Index>(cfg.hamiltonian.size()));
  for (std::size_t i = 0; i < cfg.hamiltonian.size(); ++i) a(static_cast<Eigen::Index>(i)) = cfg.hamiltonian[i];
  return Hamiltonian::from_coefficients(rep, std::move(a));
}

TrajectoryRecord run_simulate(const ExperimentConfig& cfg) {
  cfg.validate();
  const AlgebraRep rep = build_algebra(cfg.algebra);
  const CartanData cd = cartan_decompose(rep);
  return simulate_trajectory(initial_state(cfg, rep, cd), hamiltonian(cfg, rep), rep, cfg.noise(), cfg.record_stride);
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec, std::size_t k) {
  os << "t,delta,purity,trace_m2,drift";
  for (std::size_t i = 1; i <= k; ++i) os << ",x" << i;
  os << '\n';
  for (std::size_t r = 0; r < rec.times.size(); ++r) {
    const auto& row = rec.rows[r];
    os << fmt17(rec.times[r]) << ',' << fmt17(row.delta) << ',' << fmt17(row.purity) << ',' << fmt17(row.trace_m2)
       << ',' << fmt17(row.drift);
    for (Eigen::Index i = 0; i < row.expectations.size(); ++i) os << ',' << fmt17(row.expectations(i));
    os << '\n';
  }
}

EnsembleReport run_ensemble(const ExperimentConfig& cfg) {
  cfg.validate();
  const AlgebraRep rep = build_algebra(cfg.algebra);
  const CartanData cd = cartan_decompose(rep);
  const PureState psi0 = initial_state(cfg, rep, cd);
  const Hamiltonian h = hamiltonian(cfg, rep);
  const NoiseConfig noise = cfg.noise();

  const EnsembleResult ens = ensemble_average(psi0, h, rep, noise, cfg.n_traj, cfg.record_stride, cfg.thread_count());
  const DensitySeries exact =
      lindblad_evolve(DensityMatrix::from_state(psi0), h, rep, cfg.gamma, cfg.dt, noise.steps, cfg.record_stride);

  EnsembleReport report;
  report.n_traj = cfg.n_traj;
  report.times = ens.times;
  for (std::size_t s = 0; s < ens.rho.size(); ++s) {
    const double dist = (ens.rho[s].matrix() - exact.states[s].matrix()).norm();
    report.distances.push_back(dist);
    report.max_distance = std::max(report.max_distance, dist);
  }
  report.passed = report.max_distance < cfg.distance_bound;
  return report;
}

ScanReport run_theorem_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const AlgebraRep rep = build_algebra(cfg.algebra);
  const CartanData cd = cartan_decompose(rep);
  const PureState top = highest_weight_state(cd);
  const auto d = static_cast<Eigen::Index>(rep.dim_hilbert);

  ScanReport report;
  report.samples = cfg.scan_samples;
  report.gcs_value = trace_norm_M(top, rep);
  report.delta_min = total_uncertainty(top, rep);

  std::vector<double> trace(cfg.scan_samples);
  std::vector<double> drift(cfg.scan_samples);
  parallel_blocks(cfg.scan_samples, cfg.thread_count(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const PureState psi = haar_random_state(d, cfg.seed, rng::Stream::scan, i);
      const auto r = uncertainty_report(psi, rep, report.delta_min, cfg.gamma);
      trace[i] = r.trace_norm_m;
      drift[i] = r.drift;
    }
  });

  report.min_trace_m2 = std::numeric_limits<double>::infinity();
  report.max_trace_m2 = -std::numeric_limits<double>::infinity();
  report.min_drift = std::numeric_limits<double>::infinity();
  report.max_drift = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < cfg.scan_samples; ++i) {
    sum += trace[i];
    report.min_trace_m2 = std::min(report.min_trace_m2, trace[i]);
    report.max_trace_m2 = std::max(report.max_trace_m2, trace[i]);
    report.min_drift = std::min(report.min_drift, drift[i]);
    report.max_drift = std::max(report.max_drift, drift[i]);
    if (!report.violation) {
      if (trace[i] < report.gcs_value - kScanTolerance)
        report.violation = ScanViolation{"trace_norm_below_gcs", i, trace[i], {}};
      else if (drift[i] > kScanTolerance)
        report.violation = ScanViolation{"positive_drift", i, drift[i], {}};
      if (report.violation)
        report.violation->amplitudes = haar_random_state(d, cfg.seed, rng::Stream::scan, i).amplitudes();
    }
  }
  report.mean_trace_m2 = sum / static_cast<double>(cfg.scan_samples);

  // Coherent states generated from |Lambda> by random group elements.
  report.gcs_samples = cfg.gcs_samples;
  const std::size_t k = rep.dim_algebra;
  std::vector<double> params(k);
  for (std::size_t g = 0; g < cfg.gcs_samples; ++g) {
    rng::fill_standard_normal(cfg.seed, rng::Stream::auxiliary, g * k, params);
    const PureState gcs = generate_gcs(rep, cd, params);
    const auto r = uncertainty_report(gcs, rep, report.delta_min, cfg.gamma);
    report.gcs_max_abs_drift = std::max(report.gcs_max_abs_drift, std::abs(r.drift));
    report.gcs_max_trace_deviation = std::max(report.gcs_max_trace_deviation, std::abs(r.trace_norm_m - report.gcs_value));
    if (!report.violation && std::abs(r.drift) > kScanTolerance)
      report.violation = ScanViolation{"nonzero_gcs_drift", g, r.drift, gcs.amplitudes()};
  }
  return report;
}

json to_json(const ScanReport& r, const ExperimentConfig& cfg) {
  json j = {{"config", config_json(cfg)},
            {"samples", r.samples},
            {"trace_m2_at_highest_weight", r.gcs_value},
            {"delta_min", r.delta_min},
            {"min_trace_m2", r.min_trace_m2},
            {"mean_trace_m2", r.mean_trace_m2},
            {"max_trace_m2", r.max_trace_m2},
            {"min_drift", r.min_drift},
            {"max_drift", r.max_drift},
            {"gcs_samples", r.gcs_samples},
            {"gcs_max_abs_drift", r.gcs_max_abs_drift},
            {"gcs_max_trace_m2_deviation", r.gcs_max_trace_deviation},
            {"tolerance", kScanTolerance},
            {"passed", !r.violation.has_value()}};
  if (r.violation) {
    j["violation"] = {{"kind", r.violation->kind},
                      {"index", r.violation->index},
                      {"value", r.violation->value},
                      {"state", complex_vector_json(r.violation->amplitudes)}};
  }
  return j;
}

json to_json(const EnsembleReport& r, const ExperimentConfig& cfg) {
  return {{"config", config_json(cfg)},  {"n_traj", r.n_traj},           {"max_distance", r.max_distance},
          {"bound", cfg.distance_bound}, {"final_distance", r.distances.empty() ? 0.0 : r.distances.back()},
          {"records", r.times.size()},   {"passed", r.passed}};
}

json algebra_to_json(const AlgebraRep& rep) {
  json gens = json::array();
  for (const auto& x : rep.generators) gens.push_back(complex_matrix_json(x));
  const auto& f = rep.structure_constants;
  json tensor = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    json plane = json::array();
    for (std::size_t jj = 0; jj < f.size(); ++jj) {
      json row = json::array();
      for (std::size_t l = 0; l < f.size(); ++l) row.push_back(f(i, jj, l));
      plane.push_back(std::move(row));
    }
    tensor.push_back(std::move(plane));
  }
  return {{"label", rep.label},
          {"dim_algebra", rep.dim_algebra},
          {"dim_hilbert", rep.dim_hilbert},
          {"normalization", rep.normalization},
          {"casimir_eigenvalue", rep.casimir_eigenvalue},
          {"adjoint_casimir", rep.adjoint_casimir},
          {"generators", std::move(gens)},
          {"structure_constants", std::move(tensor)}};
}

json cartan_to_json(const CartanData& cd) {
  json roots = json::array();
  for (const auto& a : cd.roots) roots.push_back(vector_json(a));
  json weights = json::array();
  for (const auto& w : cd.weights) weights.push_back(vector_json(w));
  return {{"rank", cd.rank},
          {"roots", std::move(roots)},
          {"weights", std::move(weights)},
          {"highest_weight", vector_json(cd.highest_weight)},
          {"positive_root_sum", vector_json(cd.positive_root_sum)}};
}

json bounds_json(const ExperimentConfig& cfg) {
  const AlgebraRep rep = build_algebra(cfg.algebra);
  const CartanData cd = cartan_decompose(rep);
  const UncertaintyBounds b = uncertainty_bounds(rep, cd);
  json roots = json::array();
  for (const auto& a : cd.roots) roots.push_back(vector_json(a));
  return {{"algebra", cfg.algebra.text()},
          {"delta_min", b.delta_min},
          {"c_h", b.c_h},
          {"c_adj", rep.adjoint_casimir},
          {"K", rep.dim_algebra},
          {"d", rep.dim_hilbert},
          {"rank", cd.rank},
          {"normalization", rep.normalization},
          {"roots", std::move(roots)},
          {"highest_weight", vector_json(cd.highest_weight)},
          {"positive_root_sum", vector_json(cd.positive_root_sum)},
          {"root_pairing", b.root_pairing},
          {"root_casimir", b.root_casimir}};
}

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const TrajectoryRecord rec = run_simulate(cfg);
    const std::size_t k = rec.rows.empty() ? 0 : static_cast<std::size_t>(rec.rows.front().expectations.size());
    with_output(cfg.out_path, out, [&](std::ostream& os) { write_trajectory_csv(os, rec, k); });
    return exit_code::ok;
  });
}

int cmd_ensemble(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const EnsembleReport report = run_ensemble(cfg);
    if (!cfg.out_path.empty() && cfg.out_path != "-") {
      with_output(cfg.out_path, out, [&](std::ostream& os) {
        os << "t,distance\n";
        for (std::size_t s = 0; s < report.times.size(); ++s)
          os << fmt17(report.times[s]) << ',' << fmt17(report.distances[s]) << '\n';
      });
    }
    with_output(cfg.summary_path, out, [&](std::ostream& os) { os << to_json(report, cfg).dump(2) << '\n'; });
    if (!report.passed)
      throw AssertionFailure("max Frobenius distance " + fmt17(report.max_distance) + " exceeds bound " +
                             fmt17(cfg.distance_bound));
    return exit_code::ok;
  });
}

int cmd_theorem_scan(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScanReport report = run_theorem_scan(cfg);
    with_output(cfg.out_path, out, [&](std::ostream& os) { os << to_json(report, cfg).dump(2) << '\n'; });
    if (report.violation)
      throw AssertionFailure(report.violation->kind + " at sample " + std::to_string(report.violation->index) +
                             " (value " + fmt17(report.violation->value) + ")");
    return exit_code::ok;
  });
}

int cmd_bounds(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err, const std::string& dump_algebra_path) {
  return guarded(err, [&] {
    json j = bounds_json(cfg);
    with_output(cfg.out_path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    if (!dump_algebra_path.empty()) {
      const AlgebraRep rep = build_algebra(cfg.algebra);
      json dump = algebra_to_json(rep);
      dump["cartan"] = cartan_to_json(cartan_decompose(rep));
      with_output(dump_algebra_path, out, [&](std::ostream& os) { os << dump.dump(2) << '\n'; });
    }
    return exit_code::ok;
  });
}

}  // namespace lieloc
