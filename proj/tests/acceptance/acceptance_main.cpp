// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lieloc/cartan_roots.hpp"
#include "lieloc/dynamics.hpp"
#include "lieloc/harness.hpp"
#include "lieloc/observables.hpp"

using namespace lieloc;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail, double seconds) {
  std::printf("%s criterion %d: %s [%s] (%.1fs)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ExperimentConfig base(const std::string& algebra) {
  ExperimentConfig cfg;
  cfg.algebra = parse_algebra_spec(algebra);
  cfg.gamma = 0.1;
  cfg.dt = 1e-3;
  return cfg;
}

const std::vector<std::string> kScanAlgebras{"su2:two_j=2", "su2:two_j=3", "su2:two_j=4", "suN:n=3"};

void unraveling_consistency() {
  Timer t;
  auto cfg = base("su2:two_j=2");
  cfg.time = 5.0;
  cfg.record_stride = 50;
  cfg.n_traj = 2000;
  const auto small = run_ensemble(cfg);
  const double first_seconds = t.seconds();
  cfg.n_traj = 4000;
  const auto large = run_ensemble(cfg);
  const bool ok = small.max_distance < 0.05 && large.max_distance < small.max_distance;
  report(1, ok, "unraveling consistency, j=1, 2000 trajectories, distance < 0.05, shrinks at 4000",
         fmt("max distance %.4g at 2000 (%.1fs), %.4g at 4000", small.max_distance, first_seconds, large.max_distance),
         t.seconds());
}

void localization() {
  Timer t;
  double worst_delta = 0.0;
  double worst_purity = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto cfg = base("su2:two_j=4");
    cfg.time = 100.0;
    cfg.record_stride = 100000;
    cfg.seed = seed;
    const auto rec = run_simulate(cfg);
    worst_delta = std::max(worst_delta, std::abs(rec.rows.back().delta - 2.0));
    worst_purity = std::max(worst_purity, std::abs(rec.rows.back().purity - 4.0));
  }
  report(2, worst_delta < 1e-2 && worst_purity < 1e-2,
         "localization, j=2, T=100, 20 Haar seeds, final delta and purity within 1e-2 of 2 and 4",
         fmt("max |delta-2| %.3g, max |P-4| %.3g", worst_delta, worst_purity), t.seconds());
}

double stationarity_deviation(double dt) {
  const auto rep = build_su2_irrep(2);
  const auto cd = cartan_decompose(rep);
  NoiseConfig cfg;
  cfg.gamma = 0.1;
  cfg.dt = dt;
  cfg.seed = 1;
  cfg.steps = static_cast<std::uint64_t>(std::llround(5.0 / dt));
  const auto rec = simulate_trajectory(highest_weight_state(cd), Hamiltonian::zero(rep), rep, cfg, 1);
  double worst = 0.0;
  for (const auto& row : rec.rows) worst = std::max(worst, std::abs(row.delta - 1.0));
  return worst;
}

void stationarity() {
  Timer t;
  const double coarse = stationarity_deviation(1e-3);
  const double fine = stationarity_deviation(5e-4);
  report(3, coarse < 5e-3 && fine < coarse, "coherent-state stationarity, j=1, max |delta - delta_min| < 5e-3, smaller at dt/2",
         fmt("%.3g at dt=1e-3, %.3g at dt=5e-4", coarse, fine), t.seconds());
}

std::vector<ScanReport> scans;

void theorem_scan() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (const auto& algebra : kScanAlgebras) {
    auto cfg = base(algebra);
    cfg.scan_samples = 10000;
    cfg.gcs_samples = 100;
    scans.push_back(run_theorem_scan(cfg));
    const auto& r = scans.back();
    ok = ok && r.min_trace_m2 >= r.gcs_value - 1e-9;
    detail += algebra + fmt(" min-gcs %.3g; ", r.min_trace_m2 - r.gcs_value);
  }
  // Closed form 2j^2 at the highest weight for spin j.
  for (std::size_t i = 0; i < 3; ++i) {
    const double j = 0.5 * static_cast<double>(i + 2);
    ok = ok && std::abs(scans[i].gcs_value - 2.0 * j * j) < 1e-9;
  }
  auto control = base("su2:two_j=1");
  control.scan_samples = 10000;
  control.gcs_samples = 100;
  const auto half = run_theorem_scan(control);
  const double spread = std::max(half.max_trace_m2 - half.gcs_value, half.gcs_value - half.min_trace_m2);
  ok = ok && spread < 1e-10;
  detail += fmt("spin-1/2 spread %.3g", spread);
  report(4, ok, "theorem scan, 1e4 Haar states, min Tr M^2 >= value at highest weight - 1e-9", detail, t.seconds());
}

void drift_sign() {
  Timer t;
  bool ok = !scans.empty();
  std::string detail;
  for (std::size_t i = 0; i < scans.size(); ++i) {
    const auto& r = scans[i];
    ok = ok && r.max_drift <= 1e-9 && r.gcs_max_abs_drift <= 1e-9 && r.gcs_samples == 100;
    detail += kScanAlgebras[i] + fmt(" max drift %.3g, gcs |drift| %.3g; ", r.max_drift, r.gcs_max_abs_drift);
  }
  report(5, ok, "drift non-positive on all scans, zero at 100 coherent states", detail, t.seconds());
}

void hamiltonian_invariance() {
  Timer t;
  auto cfg = base("su2:two_j=4");
  cfg.gamma = 0.0;
  cfg.time = 10.0;
  cfg.record_stride = 1;
  cfg.seed = 3;
  const auto rep = build_algebra(cfg.algebra);
  for (std::size_t k = 0; k < 3; ++k) cfg.hamiltonian.push_back(rng::standard_normal(11, rng::Stream::auxiliary, k));
  const auto rec = run_simulate(cfg);
  double worst = 0.0;
  for (const auto& row : rec.rows) worst = std::max(worst, std::abs(row.delta - rec.rows.front().delta));
  report(6, worst < 1e-6, "gamma=0, random algebra Hamiltonian, j=2, T=10: delta drift < 1e-6",
         fmt("max |delta(t)-delta(0)| %.3g over %.0f steps", worst, static_cast<double>(cfg.steps())), t.seconds());
}

void exact_identities() {
  Timer t;
  double casimir_gap = 0.0;
  double second_gap = 0.0;
  double split_gap = 0.0;
  double root_gap = 0.0;
  double weight_gap = 0.0;
  std::vector<std::string> algebras{"su2:two_j=1"};
  algebras.insert(algebras.end(), kScanAlgebras.begin(), kScanAlgebras.end());
  for (const auto& algebra : algebras) {
    const auto rep = build_algebra(parse_algebra_spec(algebra));
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const auto psi = haar_random_state(static_cast<Eigen::Index>(rep.dim_hilbert), 2024, rng::Stream::scan, i);
      const auto m = state_moments(psi, rep);
      casimir_gap = std::max(casimir_gap, std::abs(total_uncertainty(psi, rep) + generalized_purity(psi, rep) -
                                                   rep.casimir_eigenvalue));
      second_gap = std::max(second_gap, std::abs(m.second.trace() - rep.casimir_eigenvalue));
      const auto split = cartan_split(psi, rep);
      split_gap = std::max(split_gap, std::abs(split.total - trace_norm_M(psi, rep)));
      root_gap = std::max(root_gap, std::abs(split.root_same - split.root_same_formula));
    }
  }
  std::vector<AlgebraRep> weight_reps;
  for (int two_j = 1; two_j <= 6; ++two_j) weight_reps.push_back(build_su2_irrep(two_j));
  weight_reps.push_back(build_suN_fundamental(3));
  for (const auto& rep : weight_reps) {
    const auto cd = cartan_decompose(rep);
    for (std::size_t p = 0; p < cd.positive_roots.size(); ++p) {
      const auto& root = cd.positive_roots[p];
      const CMatrix anti = root.lowering * root.raising + root.raising * root.lowering;
      for (Eigen::Index c = 0; c < cd.weight_basis.cols(); ++c) {
        const CVector nu = cd.weight_basis.col(c);
        const auto label = weight_string(cd, p, nu);
        const double lhs = nu.dot(anti * nu).real();
        const double rhs = root.alpha.squaredNorm() * (label.j + label.j * label.j - label.m * label.m);
        weight_gap = std::max(weight_gap, std::abs(lhs - rhs));
      }
    }
  }
  const bool ok = casimir_gap < 1e-10 && second_gap < 1e-10 && split_gap < 1e-8 && root_gap < 1e-8 && weight_gap < 1e-8;
  report(7, ok, "exact identities on 1e3 Haar states per algebra and on all weight states",
         fmt("delta+P-c_H %.2g, sum<X^2>-c_H %.2g, split-TrM2 %.2g, root sector %.2g", casimir_gap, second_gap, split_gap,
             root_gap) +
             fmt(", weight formula %.2g", weight_gap),
         t.seconds());
}

void one_step_oracle() {
  Timer t;
  const auto rep = build_su2_irrep(4);
  const auto psi = haar_random_state(5, 8, rng::Stream::initial_state, 0);
  const double gamma = 0.1;
  const double dt = 1e-3;
  const double delta0 = total_uncertainty(psi, rep);
  SnlseStepper stepper(rep, Hamiltonian::zero(rep), gamma, dt);
  std::vector<double> inc(3);
  const int n = 10000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int s = 0; s < n; ++s) {
    stepper.draw_increments(static_cast<std::uint64_t>(s) + 1, 0, inc);
    const double change = total_uncertainty(stepper.step(psi, inc), rep) - delta0;
    sum += change;
    sum_sq += change * change;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
  const double predicted = localization_drift(psi, rep, gamma) * dt;
  report(8, std::abs(mean - predicted) < 3.0 * se, "one-step Monte-Carlo E[d delta] vs drift * dt within 3 SE, 1e4 draws",
         fmt("mean %.4g, predicted %.4g, se %.3g", mean, predicted, se), t.seconds());
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria{unraveling_consistency, localization,           stationarity,   theorem_scan,
                                         drift_sign,             hamiltonian_invariance, exact_identities, one_step_oracle};
  for (auto* c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("FAIL criterion: exception %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
