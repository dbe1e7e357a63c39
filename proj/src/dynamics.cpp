#include "lieloc/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "lieloc/cartan_roots.hpp"
#include "lieloc/kernels.hpp"
#include "lieloc/observables.hpp"
#include "lieloc/rng.hpp"

namespace lieloc {

Hamiltonian Hamiltonian::from_coefficients(const AlgebraRep& rep, RVector coefficients) {
  if (coefficients.size() != static_cast<Eigen::Index>(rep.dim_algebra))
    throw ConfigError("Hamiltonian needs one coefficient per generator (" + std::to_string(rep.dim_algebra) + ")");
  if (!coefficients.allFinite()) throw ConfigError("Hamiltonian coefficients must be finite");
  Hamiltonian h;
  h.matrix = rep.element(coefficients);
  h.coefficients = std::move(coefficients);
  return h;
}

Hamiltonian Hamiltonian::zero(const AlgebraRep& rep) {
  return from_coefficients(rep, RVector::Zero(static_cast<Eigen::Index>(rep.dim_algebra)));
}

void NoiseConfig::validate() const {
  if (!std::isfinite(gamma) || gamma < 0.0) throw ConfigError("gamma must be finite and non-negative");
  if (!std::isfinite(dt) || dt <= 0.0) throw ConfigError("dt must be finite and positive");
  if (gamma * dt > kMaxGammaDt * (1.0 + 1e-12)) throw ConfigError("gamma * dt must not exceed 0.01");
}

SnlseStepper::SnlseStepper(const AlgebraRep& rep, const Hamiltonian& h, double gamma, double dt,
                           HamiltonianScheme scheme)
    : generators_(rep.generators),
      gamma_(gamma),
      dt_(dt),
      noise_scale_(std::sqrt(2.0 * gamma * dt)),
      scheme_(scheme),
      hamiltonian_(h.matrix),
      images_(rep.dim_algebra, CVector(static_cast<Eigen::Index>(rep.dim_hilbert))),
      centered_(static_cast<Eigen::Index>(rep.dim_hilbert)),
      squared_(static_cast<Eigen::Index>(rep.dim_hilbert)),
      update_(static_cast<Eigen::Index>(rep.dim_hilbert)),
      scratch_(static_cast<Eigen::Index>(rep.dim_hilbert)),
      means_(rep.dim_algebra) {
  if (scheme_ == HamiltonianScheme::exact_propagator) propagator_ = unitary_exp(-dt * h.matrix);
}

double SnlseStepper::advance(CVector& psi, std::span<const double> increments) {
  using kernels::view;
  const std::size_t k = generators_.size();
  if (increments.size() != k) throw NumericalError("one increment per measured generator is required");

  for (std::size_t a = 0; a < k; ++a) {
    kernels::matvec(view(generators_[a]), view(psi), view(images_[a]));
    means_[a] = kernels::dot(view(psi), view(images_[a])).real();
  }

  update_ = psi;
  for (std::size_t a = 0; a < k; ++a) {
    // centered = (X_a - <X_a>) psi, squared = (X_a - <X_a>)^2 psi
    centered_ = images_[a];
    kernels::axpy(-means_[a], view(psi), view(centered_));
    kernels::matvec(view(generators_[a]), view(centered_), view(squared_));
    kernels::axpy(-means_[a], view(centered_), view(squared_));
    kernels::axpy(increments[a], view(centered_), view(update_));
    kernels::axpy(-gamma_ * dt_, view(squared_), view(update_));
  }

  if (scheme_ == HamiltonianScheme::euler) {
    kernels::matvec(view(hamiltonian_), view(psi), view(scratch_));
    kernels::axpy(Complex{0.0, -dt_}, view(scratch_), view(update_));
    psi.swap(update_);
  } else {
    kernels::matvec(view(propagator_), view(update_), view(psi));
  }

  const double norm = std::sqrt(kernels::norm_sq(view(psi)));
  if (!std::isfinite(norm) || norm == 0.0 || !psi.allFinite()) throw NumericalError("integration blow-up; reduce dt");
  psi /= norm;
  return std::abs(norm - 1.0);
}

PureState SnlseStepper::step(const PureState& state, std::span<const double> increments, double* pre_norm_deviation) {
  CVector psi = state.amplitudes();
  const double dev = advance(psi, increments);
  if (pre_norm_deviation != nullptr) *pre_norm_deviation = dev;
  return PureState::normalized(std::move(psi));
}

void SnlseStepper::draw_increments(std::uint64_t seed, std::uint64_t step, std::span<double> out) const {
  rng::fill_standard_normal(seed, rng::Stream::noise, step * generators_.size(), out);
  for (double& x : out) x *= noise_scale_;
}

PureState snlse_step(const PureState& state, const Hamiltonian& h, const AlgebraRep& rep, double gamma, double dt,
                     std::span<const double> increments, HamiltonianScheme scheme) {
  SnlseStepper stepper(rep, h, gamma, dt, scheme);
  return stepper.step(state, increments);
}

namespace {

ObservableRow observe(const CVector& psi, const AlgebraRep& rep, double gamma) {
  auto report = uncertainty_report(PureState::normalized(psi), rep, 0.0, gamma);
  return {report.delta, report.purity, report.trace_norm_m, report.drift, std::move(report.expectations)};
}

}  // namespace

TrajectoryRecord simulate_trajectory(const PureState& initial, const Hamiltonian& h, const AlgebraRep& rep,
                                     const NoiseConfig& cfg, std::uint64_t record_stride, bool store_states,
                                     HamiltonianScheme scheme) {
  cfg.validate();
  if (record_stride == 0) throw ConfigError("record stride must be positive");
  if (initial.dim() != static_cast<Eigen::Index>(rep.dim_hilbert)) throw ConfigError("initial state has wrong dimension");

  SnlseStepper stepper(rep, h, cfg.gamma, cfg.dt, scheme);
  std::vector<double> increments(rep.dim_algebra);
  CVector psi = initial.amplitudes();

  TrajectoryRecord rec;
  rec.seed = cfg.seed;
  const auto record = [&](std::uint64_t step) {
    rec.times.push_back(static_cast<double>(step) * cfg.dt);
    rec.rows.push_back(observe(psi, rep, cfg.gamma));
    if (store_states) rec.states.push_back(psi);
  };
  record(0);
  for (std::uint64_t step = 0; step < cfg.steps; ++step) {
    stepper.draw_increments(cfg.seed, step, increments);
    stepper.advance(psi, increments);
    if ((step + 1) % record_stride == 0) record(step + 1);
  }
  return rec;
}

CMatrix lindblad_rhs(const CMatrix& rho, const Hamiltonian& h, const AlgebraRep& rep, double gamma) {
  CMatrix out = -kImag * (h.matrix * rho - rho * h.matrix);
  if (gamma != 0.0) {
    for (const auto& x : rep.generators) {
      const CMatrix inner = x * rho - rho * x;
      out -= gamma * (x * inner - inner * x);
    }
  }
  return out;
}

DensityMatrix lindblad_step(const DensityMatrix& rho, const Hamiltonian& h, const AlgebraRep& rep, double gamma,
                            double dt) {
  const CMatrix& r0 = rho.matrix();
  const CMatrix k1 = lindblad_rhs(r0, h, rep, gamma);
  const CMatrix k2 = lindblad_rhs(r0 + 0.5 * dt * k1, h, rep, gamma);
  const CMatrix k3 = lindblad_rhs(r0 + 0.5 * dt * k2, h, rep, gamma);
  const CMatrix k4 = lindblad_rhs(r0 + dt * k3, h, rep, gamma);
  CMatrix next = r0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  next = 0.5 * (next + next.adjoint()).eval();
  auto out = DensityMatrix::trusted(std::move(next));
  if (out.min_eigenvalue() < -1e-6) throw NumericalError("step too large for positivity");
  return out;
}

CMatrix lindblad_superoperator(const Hamiltonian& h, const AlgebraRep& rep, double gamma) {
  const auto d = static_cast<Eigen::Index>(rep.dim_hilbert);
  const CMatrix id = CMatrix::Identity(d, d);
  // vec(A rho B) = (B^T kron A) vec(rho)
  CMatrix l = -kImag * (Eigen::kroneckerProduct(id, h.matrix) - Eigen::kroneckerProduct(h.matrix.transpose(), id)).eval();
  for (const auto& x : rep.generators) {
    const CMatrix x2 = x * x;
    l -= gamma * (Eigen::kroneckerProduct(id, x2) + Eigen::kroneckerProduct(x2.transpose(), id) -
                  2.0 * Eigen::kroneckerProduct(x.transpose(), x))
                     .eval();
  }
  return l;
}

DensityMatrix lindblad_exact(const DensityMatrix& rho, const Hamiltonian& h, const AlgebraRep& rep, double gamma,
                             double t) {
  const auto d = static_cast<Eigen::Index>(rep.dim_hilbert);
  if (d > 8) throw ConfigError("exact superoperator mode limited to d <= 8");
  const CMatrix propagator = (lindblad_superoperator(h, rep, gamma) * t).exp();
  const CVector vec = Eigen::Map<const CVector>(rho.matrix().data(), d * d);
  const CVector out = propagator * vec;
  CMatrix m = Eigen::Map<const CMatrix>(out.data(), d, d);
  return DensityMatrix::trusted(0.5 * (m + m.adjoint()));
}

DensitySeries lindblad_evolve(const DensityMatrix& rho0, const Hamiltonian& h, const AlgebraRep& rep, double gamma,
                              double dt, std::uint64_t steps, std::uint64_t record_stride) {
  if (record_stride == 0) throw ConfigError("record stride must be positive");
  DensitySeries series;
  DensityMatrix rho = rho0;
  series.times.push_back(0.0);
  series.states.push_back(rho);
  for (std::uint64_t step = 0; step < steps; ++step) {
    rho = lindblad_step(rho, h, rep, gamma, dt);
    if ((step + 1) % record_stride == 0) {
      series.times.push_back(static_cast<double>(step + 1) * dt);
      series.states.push_back(rho);
    }
  }
  return series;
}

EnsembleResult ensemble_average(const PureState& initial, const Hamiltonian& h, const AlgebraRep& rep,
                                const NoiseConfig& cfg, std::size_t n_traj, std::uint64_t record_stride,
                                std::size_t threads) {
  cfg.validate();
  if (n_traj == 0) throw ConfigError("ensemble needs at least one trajectory");
  if (record_stride == 0) throw ConfigError("record stride must be positive");
  const auto d = static_cast<Eigen::Index>(rep.dim_hilbert);
  const auto k = static_cast<Eigen::Index>(rep.dim_algebra);
  const std::size_t n_rec = static_cast<std::size_t>(cfg.steps / record_stride) + 1;

  struct Partial {
    std::vector<CMatrix> rho;
    RMatrix x_sum;
    RMatrix x_sq;
  };
  threads = std::clamp<std::size_t>(threads, 1, n_traj);
  std::vector<Partial> partials(threads);

  parallel_blocks(n_traj, threads, [&](std::size_t block, std::size_t begin, std::size_t end) {
    Partial& acc = partials[block];
    acc.rho.assign(n_rec, CMatrix::Zero(d, d));
    acc.x_sum = RMatrix::Zero(static_cast<Eigen::Index>(n_rec), k);
    acc.x_sq = RMatrix::Zero(static_cast<Eigen::Index>(n_rec), k);
    SnlseStepper stepper(rep, h, cfg.gamma, cfg.dt);
    std::vector<double> increments(rep.dim_algebra);
    CVector psi(d);
    CVector image(d);
    const auto record = [&](std::size_t slot) {
      acc.rho[slot].noalias() += psi * psi.adjoint();
      for (Eigen::Index a = 0; a < k; ++a) {
        kernels::matvec(kernels::view(rep.generators[static_cast<std::size_t>(a)]), kernels::view(psi),
                        kernels::view(image));
        const double x = kernels::dot(kernels::view(psi), kernels::view(image)).real();
        acc.x_sum(static_cast<Eigen::Index>(slot), a) += x;
        acc.x_sq(static_cast<Eigen::Index>(slot), a) += x * x;
      }
    };
    for (std::size_t traj = begin; traj < end; ++traj) {
      const std::uint64_t seed = cfg.seed + traj;
      psi = initial.amplitudes();
      record(0);
      for (std::uint64_t step = 0; step < cfg.steps; ++step) {
        stepper.draw_increments(seed, step, increments);
        stepper.advance(psi, increments);
        if ((step + 1) % record_stride == 0) record(static_cast<std::size_t>((step + 1) / record_stride));
      }
    }
  });

  EnsembleResult out;
  out.n_traj = n_traj;
  std::vector<CMatrix> rho_sum(n_rec, CMatrix::Zero(d, d));
  RMatrix x_sum = RMatrix::Zero(static_cast<Eigen::Index>(n_rec), k);
  RMatrix x_sq = RMatrix::Zero(static_cast<Eigen::Index>(n_rec), k);
  for (const auto& p : partials) {
    if (p.rho.empty()) continue;
    for (std::size_t s = 0; s < n_rec; ++s) rho_sum[s] += p.rho[s];
    x_sum += p.x_sum;
    x_sq += p.x_sq;
  }
  const double n = static_cast<double>(n_traj);
  for (std::size_t s = 0; s < n_rec; ++s) {
    out.times.push_back(static_cast<double>(s * record_stride) * cfg.dt);
    out.rho.push_back(DensityMatrix::trusted(rho_sum[s] / n));
  }
  out.expectation_mean = x_sum / n;
  const RMatrix variance = (x_sq / n - out.expectation_mean.cwiseAbs2()).cwiseMax(0.0);
  out.expectation_stderr = n > 1 ? RMatrix((variance * (n / (n - 1.0)) / n).cwiseSqrt()) : RMatrix::Zero(variance.rows(), variance.cols());
  return out;
}

}  // namespace lieloc
