#pragma once

#include <span>
#include <string>
#include <vector>

#include "lieloc/types.hpp"

namespace lieloc {

/// Real rank-3 tensor f[i][j][k] with [X_i, X_j] = i sum_k f_ijk X_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t k) : k_(k), data_(k * k * k, 0.0) {}

  std::size_t size() const { return k_; }
  double operator()(std::size_t i, std::size_t j, std::size_t l) const { return data_[(i * k_ + j) * k_ + l]; }
  double& operator()(std::size_t i, std::size_t j, std::size_t l) { return data_[(i * k_ + j) * k_ + l]; }

  /// Real K x K matrix A with [sum_l c_l X_l, X_j] = i sum_k A_kj X_k.
  RMatrix adjoint_matrix(const RVector& coeffs) const;

 private:
  std::size_t k_ = 0;
  std::vector<double> data_;
};

/// Irreducible Hermitian matrix representation of a compact semisimple
/// algebra in a trace-orthogonal basis of uniform norm
/// trace(X_i X_j) = normalization * delta_ij.
struct AlgebraRep {
  std::string label;
  std::vector<CMatrix> generators;
  std::size_t dim_algebra = 0;
  std::size_t dim_hilbert = 0;
  StructureConstants structure_constants;
  RMatrix gram;
  double casimir_eigenvalue = 0.0;
  double adjoint_casimir = 0.0;
  double normalization = 0.0;

  /// sum_k coeffs_k X_k
  CMatrix element(const RVector& coeffs) const;
};

struct CasimirConstants {
  double c_h;
  double c_adj;
};

/// Maximum residuals of the representation invariants, for assertions.
struct RepResiduals {
  double hermiticity;
  double closure;
  double antisymmetry;
  double imaginary_part;
  double gram_off_diagonal;
  double gram_non_uniform;
  double casimir;
  double adjoint_casimir;
};

/// Spin-j irrep with j = two_j / 2, generators (J_x, J_y, J_z), J_z diagonal
/// with entries j, j-1, ..., -j.
AlgebraRep build_su2_irrep(int two_j);

/// Defining representation of su(N) in the generalized Gell-Mann basis,
/// X_a = lambda_a / 2. For N = 3 the ordering is the standard lambda_1..lambda_8.
AlgebraRep build_suN_fundamental(int n);

/// Validates the generator set and derives every invariant.
/// Throws AlgebraError when the set is not Hermitian, not trace-orthogonal
/// with uniform norm, not closed, or not irreducible.
AlgebraRep make_algebra_rep(std::vector<CMatrix> generators, std::string label);

/// f_ijk = -(i / lambda) trace([X_i, X_j] X_k). Throws AlgebraError
/// "not a closed algebra" if some commutator leaves the span by more than 1e-8.
StructureConstants compute_structure_constants(std::span<const CMatrix> generators);

/// c_H from the Casimir sum_j X_j^2 and c_adj from sum_j [X_j, [X_j, X_i]],
/// each verified for proportionality. Throws AlgebraError
/// "representation not irreducible" when the Casimir is not scalar.
CasimirConstants casimir_constants(const AlgebraRep& rep);

RepResiduals rep_residuals(const AlgebraRep& rep);

/// Same algebra with every generator multiplied by `scale`.
AlgebraRep rescaled(const AlgebraRep& rep, double scale);

/// Rescaled so the Killing form tr(ad X_i ad X_j) is the identity (c_adj = 1).
AlgebraRep killing_normalized(const AlgebraRep& rep);

}  // namespace lieloc
