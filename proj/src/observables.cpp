#include "lieloc/observables.hpp"

#include <cmath>
#include <vector>

#include "lieloc/kernels.hpp"

namespace lieloc {

StateMoments state_moments(const CVector& psi, std::span<const CMatrix> generators) {
  const auto k = static_cast<Eigen::Index>(generators.size());
  const Eigen::Index d = psi.size();
  std::vector<CVector> images(generators.size(), CVector(d));
  StateMoments m{RVector(k), RMatrix(k, k)};
  for (Eigen::Index a = 0; a < k; ++a) {
    auto& v = images[static_cast<std::size_t>(a)];
    kernels::matvec(kernels::view(generators[static_cast<std::size_t>(a)]), kernels::view(psi), kernels::view(v));
    m.mean(a) = kernels::dot(kernels::view(psi), kernels::view(v)).real();
  }
  // <X_a X_b> = <X_a psi | X_b psi> for Hermitian X_a
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = a; b < k; ++b) {
      const double s = kernels::dot(kernels::view(images[static_cast<std::size_t>(a)]),
                                    kernels::view(images[static_cast<std::size_t>(b)]))
                           .real();
      m.second(a, b) = s;
      m.second(b, a) = s;
    }
  return m;
}

StateMoments state_moments(const PureState& state, const AlgebraRep& rep) {
  return state_moments(state.amplitudes(), rep.generators);
}

double total_uncertainty(const PureState& state, const AlgebraRep& rep) {
  const auto m = state_moments(state, rep);
  return m.second.trace() - m.mean.squaredNorm();
}

double generalized_purity(const PureState& state, const AlgebraRep& rep) {
  return expectation_vector(state, rep).squaredNorm();
}

RVector expectation_vector(const PureState& state, const AlgebraRep& rep) {
  const auto& psi = state.amplitudes();
  RVector mean(static_cast<Eigen::Index>(rep.dim_algebra));
  CVector v(psi.size());
  for (std::size_t a = 0; a < rep.dim_algebra; ++a) {
    kernels::matvec(kernels::view(rep.generators[a]), kernels::view(psi), kernels::view(v));
    mean(static_cast<Eigen::Index>(a)) = kernels::dot(kernels::view(psi), kernels::view(v)).real();
  }
  return mean;
}

RMatrix covariance_from_moments(const StateMoments& m) { return 2.0 * m.second - 2.0 * m.mean * m.mean.transpose(); }

RMatrix covariance_matrix(const PureState& state, const AlgebraRep& rep) {
  return covariance_from_moments(state_moments(state, rep));
}

double trace_norm_M(const PureState& state, const AlgebraRep& rep) {
  return covariance_matrix(state, rep).squaredNorm();
}

double localization_drift(const PureState& state, const AlgebraRep& rep, double gamma) {
  const auto m = state_moments(state, rep);
  return 2.0 * gamma * (rep.adjoint_casimir * m.mean.squaredNorm() - covariance_from_moments(m).squaredNorm());
}

UncertaintyReport uncertainty_report(const PureState& state, const AlgebraRep& rep, double delta_min, double gamma) {
  const auto m = state_moments(state, rep);
  const double purity = m.mean.squaredNorm();
  const double tr_m2 = covariance_from_moments(m).squaredNorm();
  return UncertaintyReport{m.second.trace() - purity,
                           purity,
                           rep.casimir_eigenvalue,
                           delta_min,
                           tr_m2,
                           2.0 * gamma * (rep.adjoint_casimir * purity - tr_m2),
                           m.mean};
}

UncertaintyBounds uncertainty_bounds(const AlgebraRep& rep, const CartanData& cd) {
  const PureState top = highest_weight_state(cd);
  UncertaintyBounds b{};
  b.delta_min = total_uncertainty(top, rep);
  b.c_h = rep.casimir_eigenvalue;
  b.root_pairing = cd.highest_weight.dot(cd.positive_root_sum);
  b.root_casimir = cd.highest_weight.dot(cd.highest_weight + cd.positive_root_sum);
  if (std::abs(b.delta_min - b.root_pairing) > 1e-6 || std::abs(b.c_h - b.root_casimir) > 1e-6)
    throw AlgebraError("normalization inconsistency between root space and generators");
  return b;
}

CartanSplit cartan_split(const PureState& state, const AlgebraRep& rep) {
  const RVector mean = expectation_vector(state, rep);
  const CartanData cd = cartan_decompose(rep, mean);
  const auto k = static_cast<Eigen::Index>(rep.dim_algebra);
  const auto r = static_cast<Eigen::Index>(cd.rank);

  std::vector<CMatrix> aligned;
  aligned.reserve(rep.dim_algebra);
  for (Eigen::Index a = 0; a < k; ++a) aligned.push_back(rep.element(cd.aligned_basis.row(a).transpose()));
  const auto moments = state_moments(state.amplitudes(), aligned);
  const RMatrix m = covariance_from_moments(moments);

  // Row a >= r belongs to positive root (a - r) / 2.
  const auto pair_of = [r](Eigen::Index a) { return (a - r) / 2; };
  CartanSplit s{};
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      const double v = m(a, b) * m(a, b);
      if (a < r && b < r) {
        s.cartan_cartan += v;
      } else if (a < r || b < r) {
        s.cartan_root += v;
      } else if (pair_of(a) != pair_of(b)) {
        s.root_cross += v;
      } else {
        s.root_same += v;
      }
    }
  }
  s.total = s.cartan_cartan + s.cartan_root + s.root_cross + s.root_same;
  s.root_expectation = k > r ? moments.mean.tail(k - r).cwiseAbs().maxCoeff() : 0.0;

  const CVector& psi = state.amplitudes();
  for (const auto& root : cd.positive_roots) {
    const CMatrix& e = root.raising;
    const CMatrix& f = root.lowering;
    const Complex e2 = psi.dot(e * (e * psi));
    const Complex f2 = psi.dot(f * (f * psi));
    const double sym = psi.dot((e * f + f * e) * psi).real();
    s.root_same_formula += 8.0 * (e2 * f2).real() + 2.0 * sym * sym;
  }
  return s;
}

}  // namespace lieloc
