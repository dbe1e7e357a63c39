#pragma once

#include <cstdint>

#include "lieloc/rng.hpp"
#include "lieloc/types.hpp"

namespace lieloc {

/// Normalized state vector of the irrep Hilbert space.
class PureState {
 public:
  /// Normalizes `amplitudes`; throws NumericalError on zero or non-finite input.
  static PureState normalized(CVector amplitudes);

  /// Basis vector e_index of a d-dimensional space.
  static PureState basis(Eigen::Index dim, Eigen::Index index);

  const CVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }

  CMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  explicit PureState(CVector v) : amplitudes_(std::move(v)) {}
  CVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenFloor = -1e-8;

  /// Validates all invariants; throws NumericalError on violation.
  static DensityMatrix from_matrix(CMatrix entries);
  static DensityMatrix from_state(const PureState& state);

  /// Skips validation. For propagators that enforce their own guards.
  static DensityMatrix trusted(CMatrix entries) { return DensityMatrix(std::move(entries)); }

  const CMatrix& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

  double purity() const;
  double min_eigenvalue() const;

 private:
  explicit DensityMatrix(CMatrix m) : entries_(std::move(m)) {}
  CMatrix entries_;
};

/// Haar-random state: normalized vector of i.i.d. standard complex Gaussians,
/// drawn from the counter stream at offset index * 2 * dim.
PureState haar_random_state(Eigen::Index dim, std::uint64_t seed, rng::Stream stream, std::uint64_t index);

}  // namespace lieloc
