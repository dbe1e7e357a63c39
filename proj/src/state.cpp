#include "lieloc/state.hpp"

#include <cmath>
#include <vector>

namespace lieloc {

PureState PureState::normalized(CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!std::isfinite(norm) || norm == 0.0) throw NumericalError("state vector has zero or non-finite norm");
  amplitudes /= norm;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index index) {
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix DensityMatrix::from_matrix(CMatrix entries) {
  if (entries.rows() != entries.cols()) throw NumericalError("density matrix must be square");
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw NumericalError("density matrix is not Hermitian");
  if (std::abs(entries.trace() - Complex{1.0, 0.0}) > kTraceTol)
    throw NumericalError("density matrix trace differs from 1");
  DensityMatrix rho(std::move(entries));
  if (rho.min_eigenvalue() < kEigenFloor) throw NumericalError("density matrix is not positive semidefinite");
  return rho;
}

DensityMatrix DensityMatrix::from_state(const PureState& state) { return DensityMatrix(state.projector()); }

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

PureState haar_random_state(Eigen::Index dim, std::uint64_t seed, rng::Stream stream, std::uint64_t index) {
  const auto count = static_cast<std::size_t>(2 * dim);
  std::vector<double> draws(count);
  rng::fill_standard_normal(seed, stream, index * count, draws);
  CVector v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) v(k) = Complex{draws[2 * k], draws[2 * k + 1]};
  return PureState::normalized(std::move(v));
}

}  // namespace lieloc
