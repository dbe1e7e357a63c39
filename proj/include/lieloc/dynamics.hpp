#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lieloc/algebra_rep.hpp"
#include "lieloc/parallel.hpp"
#include "lieloc/state.hpp"

namespace lieloc {

/// Lie-algebraic Hamiltonian H = sum_j a_j X_j.
struct Hamiltonian {
  RVector coefficients;
  CMatrix matrix;

  static Hamiltonian from_coefficients(const AlgebraRep& rep, RVector coefficients);
  static Hamiltonian zero(const AlgebraRep& rep);
};

/// Largest admissible gamma * dt.
inline constexpr double kMaxGammaDt = 0.01;

struct NoiseConfig {
  double gamma = 0.1;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  std::uint64_t steps = 0;

  /// Throws ConfigError unless gamma >= 0, dt > 0 and gamma * dt <= 0.01.
  void validate() const;
};

/// How the Hamiltonian part of a step is applied.
enum class HamiltonianScheme {
  exact_propagator,  // multiply by exp(-i H dt) after the measurement update
  euler,             // add -i H psi dt to the Euler-Maruyama update
};

/// Euler-Maruyama integrator for
///   d psi = {-i H dt - gamma sum_i (X_i - <X_i>)^2 dt + sum_i (X_i - <X_i>) dxi_i} psi
/// with expectations taken at the incoming state and renormalization after
/// every step. Increments are independent per channel with variance 2 gamma dt.
///
/// Holds scratch buffers: one instance per thread.
class SnlseStepper {
 public:
  SnlseStepper(const AlgebraRep& rep, const Hamiltonian& h, double gamma, double dt,
               HamiltonianScheme scheme = HamiltonianScheme::exact_propagator);

  /// Advances `psi` in place by one step. Returns the norm deviation
  /// | ||psi'|| - 1 | before renormalization. Throws NumericalError
  /// "integration blow-up; reduce dt" on non-finite amplitudes.
  double advance(CVector& psi, std::span<const double> increments);

  PureState step(const PureState& state, std::span<const double> increments, double* pre_norm_deviation = nullptr);

  /// Increments of step `step` for a trajectory keyed by `seed`.
  void draw_increments(std::uint64_t seed, std::uint64_t step, std::span<double> out) const;

  std::size_t channels() const { return generators_.size(); }

 private:
  std::span<const CMatrix> generators_;
  double gamma_;
  double dt_;
  double noise_scale_;
  HamiltonianScheme scheme_;
  CMatrix hamiltonian_;
  CMatrix propagator_;
  std::vector<CVector> images_;
  CVector centered_;
  CVector squared_;
  CVector update_;
  CVector scratch_;
  std::vector<double> means_;
};

/// One sNLSE step from explicit increments.
PureState snlse_step(const PureState& state, const Hamiltonian& h, const AlgebraRep& rep, double gamma, double dt,
                     std::span<const double> increments,
                     HamiltonianScheme scheme = HamiltonianScheme::exact_propagator);

struct ObservableRow {
  double delta;
  double purity;
  double trace_m2;
  double drift;
  RVector expectations;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<ObservableRow> rows;
  std::vector<CVector> states;  // filled only when requested
  std::uint64_t seed = 0;
};

/// Deterministic in (initial, h, rep, cfg). Records step 0 and every
/// `record_stride` steps after it.
TrajectoryRecord simulate_trajectory(const PureState& initial, const Hamiltonian& h, const AlgebraRep& rep,
                                     const NoiseConfig& cfg, std::uint64_t record_stride, bool store_states = false,
                                     HamiltonianScheme scheme = HamiltonianScheme::exact_propagator);

/// -i[H, rho] - gamma sum_j [X_j, [X_j, rho]]
CMatrix lindblad_rhs(const CMatrix& rho, const Hamiltonian& h, const AlgebraRep& rep, double gamma);

/// One RK4 step of the master equation with Hermitian symmetrization.
/// Throws NumericalError "step too large for positivity" if the smallest
/// eigenvalue drops below -1e-6.
DensityMatrix lindblad_step(const DensityMatrix& rho, const Hamiltonian& h, const AlgebraRep& rep, double gamma,
                            double dt);

/// Liouvillian acting on column-major vec(rho), size d^2 x d^2.
CMatrix lindblad_superoperator(const Hamiltonian& h, const AlgebraRep& rep, double gamma);

/// rho(t) = exp(L t) rho via the exact superoperator exponential; d <= 8.
DensityMatrix lindblad_exact(const DensityMatrix& rho, const Hamiltonian& h, const AlgebraRep& rep, double gamma,
                             double t);

struct DensitySeries {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

/// RK4 propagation recording step 0 and every `record_stride` steps.
DensitySeries lindblad_evolve(const DensityMatrix& rho0, const Hamiltonian& h, const AlgebraRep& rep, double gamma,
                              double dt, std::uint64_t steps, std::uint64_t record_stride);

struct EnsembleResult {
  std::vector<double> times;
  std::vector<DensityMatrix> rho;  // trajectory-averaged projectors
  RMatrix expectation_mean;        // rows = record times, cols = generators
  RMatrix expectation_stderr;      // standard error of the mean of <X_k>
  std::size_t n_traj = 0;
};

/// Averages |psi><psi| over n_traj trajectories with seeds cfg.seed + i.
/// Trajectories are split into contiguous blocks, one per thread; block sums
/// are combined in block order.
EnsembleResult ensemble_average(const PureState& initial, const Hamiltonian& h, const AlgebraRep& rep,
                                const NoiseConfig& cfg, std::size_t n_traj, std::uint64_t record_stride,
                                std::size_t threads = default_thread_count());

}  // namespace lieloc
