#pragma once

#include <span>

#include "lieloc/algebra_rep.hpp"
#include "lieloc/cartan_roots.hpp"
#include "lieloc/state.hpp"

namespace lieloc {

/// First and second moments of the generators in a pure state.
struct StateMoments {
  RVector mean;    // <X_k>
  RMatrix second;  // Re <X_k X_l> = <{X_k, X_l}> / 2
};

StateMoments state_moments(const CVector& psi, std::span<const CMatrix> generators);
StateMoments state_moments(const PureState& state, const AlgebraRep& rep);

/// sum_j <X_j^2> - sum_j <X_j>^2
double total_uncertainty(const PureState& state, const AlgebraRep& rep);
/// sum_j <X_j>^2
double generalized_purity(const PureState& state, const AlgebraRep& rep);
RVector expectation_vector(const PureState& state, const AlgebraRep& rep);

/// M_ij = <{X_i, X_j}> - 2 <X_i><X_j>
RMatrix covariance_matrix(const PureState& state, const AlgebraRep& rep);
RMatrix covariance_from_moments(const StateMoments& m);

/// Tr{M^2} = sum_ij M_ij^2
double trace_norm_M(const PureState& state, const AlgebraRep& rep);

/// Deterministic part of dDelta/dt under the sNLSE:
/// 2 gamma (c_adj P - Tr{M^2}). Zero on coherent states, never positive.
double localization_drift(const PureState& state, const AlgebraRep& rep, double gamma);

struct UncertaintyReport {
  double delta;
  double purity;
  double c_h;
  double delta_min;
  double trace_norm_m;
  double drift;
  RVector expectations;
};

/// All scalar functionals in one pass over the moments.
UncertaintyReport uncertainty_report(const PureState& state, const AlgebraRep& rep, double delta_min, double gamma);

struct UncertaintyBounds {
  double delta_min;     // total uncertainty at |Lambda>
  double c_h;           // Casimir eigenvalue
  double root_pairing;  // (Lambda, mu)
  double root_casimir;  // (Lambda, Lambda + mu)
};

/// Throws AlgebraError "normalization inconsistency between root space and
/// generators" if the state-level and root-space values differ by more than 1e-6.
UncertaintyBounds uncertainty_bounds(const AlgebraRep& rep, const CartanData& cd);

/// Tr{M^2} split into Cartan-Cartan, Cartan-root, root pairs of different
/// roots and the same root, evaluated in a Cartan-aligned basis whose Cartan
/// subalgebra contains the expectation vector of the state.
struct CartanSplit {
  double cartan_cartan;
  double cartan_root;
  double root_cross;
  double root_same;
  double total;                 // sum of the four sectors
  double root_expectation;      // max |<X_alpha>| in the aligned basis (should vanish)
  double root_same_formula;     // 8 sum <E^2><E_-^2> + 2 sum <E E_- + E_- E>^2
};

CartanSplit cartan_split(const PureState& state, const AlgebraRep& rep);

}  // namespace lieloc
