#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lieloc/algebra_rep.hpp"
#include "lieloc/state.hpp"

namespace lieloc {

struct PositiveRoot {
  RVector alpha;      // root vector in R^r, components alpha(H_i)
  CVector coeffs;     // E_alpha = sum_k coeffs_k X_k, |coeffs| = 1
  CMatrix raising;    // E_alpha
  CMatrix lowering;   // E_{-alpha} = E_alpha^dagger
};

/// Cartan decomposition of a represented algebra.
///
/// Normalization: H_i and the real root generators have the same trace norm
/// as the X_k, and trace(E_alpha E_{-alpha}) = lambda, so that
/// [E_alpha, E_{-alpha}] = sum_i alpha_i H_i.
struct CartanData {
  std::size_t rank = 0;
  RMatrix cartan_coeffs;                 // r x K, H_i = sum_k cartan_coeffs(i, k) X_k
  std::vector<CMatrix> cartan_generators;
  std::vector<PositiveRoot> positive_roots;
  std::vector<RVector> roots;            // all roots; roots[2p] = +alpha_p, roots[2p+1] = -alpha_p
  CMatrix weight_basis;                  // unitary, columns are simultaneous H_i eigenvectors
  std::vector<RVector> weights;          // weight of each column of weight_basis
  RVector highest_weight;
  Eigen::Index highest_index = 0;
  bool highest_unique = true;
  RVector positive_root_sum;             // mu
  // K x K orthogonal matrix; row a holds the coefficients of the a-th aligned
  // generator. Rows [0, r) span the Cartan subalgebra, then for each positive
  // root p the pair (E + E^dagger)/sqrt2, (E - E^dagger)/(i sqrt2) in rows
  // r + 2p and r + 2p + 1.
  RMatrix aligned_basis;
};

/// Lexicographic order on R^r with tolerance 1e-10: true if a > b.
bool lex_greater(const RVector& a, const RVector& b);

/// Cartan subalgebra and roots from the adjoint action of a generic element.
///
/// The generic element is drawn from the centralizer of `anchor` (a coefficient
/// vector), so the returned Cartan subalgebra contains it. Without an anchor
/// the centralizer of a random combination of the diagonal generators is used,
/// which gives {J_z} for spin irreps and the diagonal Gell-Mann matrices for
/// su(N). Throws NumericalError "Cartan extraction failed" on inconsistency.
CartanData cartan_decompose(const AlgebraRep& rep, const std::optional<RVector>& anchor = std::nullopt);

/// Throws AlgebraError "highest weight not unique" for degenerate maxima.
PureState highest_weight_state(const CartanData& cd);

/// exp(i sum_k params_k X_k) |Lambda>
PureState generate_gcs(const AlgebraRep& rep, const CartanData& cd, std::span<const double> params);

/// exp(i A) for Hermitian A, via eigendecomposition.
CMatrix unitary_exp(const CMatrix& hermitian);

struct Su2Triple {
  CMatrix e3;     // alpha . H / |alpha|^2
  CMatrix eplus;  // E_alpha / |alpha|
  CMatrix eminus; // E_{-alpha} / |alpha|
};

Su2Triple su2_triple_for_root(const CartanData& cd, std::size_t root_index);

struct WeightLabel {
  double j;  // maximal weight of the alpha-string irrep
  double m;  // position of the state in that irrep
};

/// Walks the alpha-string through `weight_state` with E^+ and E^- until the
/// image norm drops below 1e-10.
WeightLabel weight_string(const CartanData& cd, std::size_t root_index, const CVector& weight_state);

}  // namespace lieloc
