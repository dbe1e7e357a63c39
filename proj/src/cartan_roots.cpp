#include "lieloc/cartan_roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lieloc/rng.hpp"

namespace lieloc {

namespace {

// Fixed key for the generic elements so decompositions are reproducible.
constexpr std::uint64_t kGenericSeed = 0x6c69656c6f63ULL;
constexpr double kRootTol = 1e-8;

RVector random_vector(Eigen::Index n, std::uint64_t& counter) {
  RVector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = rng::standard_normal(kGenericSeed, rng::Stream::auxiliary, counter++);
  return v;
}

// Orthonormal basis (columns) of the null space of a real square matrix.
RMatrix null_space(const RMatrix& a) {
  Eigen::JacobiSVD<RMatrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double tol = kRootTol * std::max(1.0, s.size() ? s(0) : 0.0);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) < tol) cols.push_back(k);
  RMatrix basis(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = svd.matrixV().col(cols[c]);
  return basis;
}

// Gram-Schmidt of P e_0, P e_1, ... for the projector onto span(basis).
// Deterministic given the subspace; reproduces coordinate axes when the
// subspace is spanned by them.
RMatrix canonical_basis(const RMatrix& basis) {
  const Eigen::Index k = basis.rows();
  const Eigen::Index r = basis.cols();
  const RMatrix proj = basis * basis.transpose();
  RMatrix out(r, k);
  Eigen::Index found = 0;
  for (Eigen::Index e = 0; e < k && found < r; ++e) {
    RVector v = proj.col(e);
    for (Eigen::Index p = 0; p < found; ++p) v -= out.row(p).dot(v) * out.row(p).transpose();
    if (v.norm() > 1e-6) out.row(found++) = v.normalized().transpose();
  }
  if (found != r) throw NumericalError("Cartan extraction failed");
  return out;
}

bool lex_positive(const RVector& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) > 1e-10) return true;
    if (a(i) < -1e-10) return false;
  }
  return false;
}

// Multiplies by a phase so the first entry of maximal modulus is real positive.
template <typename Derived>
Complex leading_phase(const Eigen::MatrixBase<Derived>& m) {
  const double peak = m.cwiseAbs().maxCoeff();
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (std::abs(m(r, c)) >= peak * (1.0 - 1e-9)) return std::conj(m(r, c)) / std::abs(m(r, c));
  return {1.0, 0.0};
}

struct RootSearch {
  std::vector<PositiveRoot> positive;
  bool ok = false;
};

RootSearch find_roots(const AlgebraRep& rep, const RMatrix& cartan, const RVector& direction) {
  const auto& f = rep.structure_constants;
  const Eigen::Index r = cartan.rows();
  const Eigen::Index k = cartan.cols();
  const RVector h = cartan.transpose() * direction;
  const CMatrix ad = kImag * f.adjoint_matrix(h).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(ad);
  const RVector evals = solver.eigenvalues();
  const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());

  std::vector<CMatrix> cartan_ad;
  for (Eigen::Index i = 0; i < r; ++i) cartan_ad.push_back(kImag * f.adjoint_matrix(cartan.row(i).transpose()).cast<Complex>());

  RootSearch out;
  Eigen::Index zeros = 0;
  for (Eigen::Index a = 0; a < k; ++a) {
    if (std::abs(evals(a)) < kRootTol * scale) {
      ++zeros;
      continue;
    }
    if ((a > 0 && std::abs(evals(a) - evals(a - 1)) < kRootTol * scale) ||
        (a + 1 < k && std::abs(evals(a + 1) - evals(a)) < kRootTol * scale))
      return out;  // non-generic direction
    CVector u = solver.eigenvectors().col(a);
    RVector alpha(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      alpha(i) = u.dot(cartan_ad[static_cast<std::size_t>(i)] * u).real();
      if ((cartan_ad[static_cast<std::size_t>(i)] * u - alpha(i) * u).norm() > kRootTol * scale) return out;
    }
    if (!lex_positive(alpha)) continue;
    CMatrix e = CMatrix::Zero(static_cast<Eigen::Index>(rep.dim_hilbert), static_cast<Eigen::Index>(rep.dim_hilbert));
    for (Eigen::Index c = 0; c < k; ++c) e += u(c) * rep.generators[static_cast<std::size_t>(c)];
    const Complex phase = leading_phase(e);
    u *= phase;
    e *= phase;
    PositiveRoot root;
    root.alpha = alpha;
    root.coeffs = u;
    root.lowering = e.adjoint();
    root.raising = std::move(e);
    out.positive.push_back(std::move(root));
  }
  out.ok = zeros == r && static_cast<Eigen::Index>(2 * out.positive.size()) + r == k;
  return out;
}

}  // namespace

bool lex_greater(const RVector& a, const RVector& b) { return lex_positive(a - b); }

CartanData cartan_decompose(const AlgebraRep& rep, const std::optional<RVector>& anchor) {
  const auto k = static_cast<Eigen::Index>(rep.dim_algebra);
  const auto d = static_cast<Eigen::Index>(rep.dim_hilbert);
  const auto& f = rep.structure_constants;
  std::uint64_t counter = 0;

  RVector seed_element;
  if (anchor && anchor->norm() > 1e-12) {
    if (anchor->size() != k) throw NumericalError("anchor has wrong dimension");
    seed_element = anchor->normalized();
  } else {
    seed_element = RVector::Zero(k);
    const RVector w = random_vector(k, counter);
    bool any_diagonal = false;
    for (Eigen::Index c = 0; c < k; ++c) {
      const CMatrix& x = rep.generators[static_cast<std::size_t>(c)];
      const CMatrix off = x - CMatrix(x.diagonal().asDiagonal());
      if (off.cwiseAbs().maxCoeff() < 1e-14) {
        seed_element(c) = w(c);
        any_diagonal = true;
      }
    }
    if (!any_diagonal) seed_element = w;
    seed_element.normalize();
  }

  // Generic element of the centralizer of the seed, then its centralizer.
  const RMatrix centralizer = null_space(f.adjoint_matrix(seed_element));
  if (centralizer.cols() == 0) throw NumericalError("Cartan extraction failed");
  const RVector generic = (centralizer * random_vector(centralizer.cols(), counter)).normalized();
  const RMatrix kernel = null_space(f.adjoint_matrix(generic));
  if (kernel.cols() == 0) throw NumericalError("Cartan extraction failed");

  CartanData cd;
  cd.rank = static_cast<std::size_t>(kernel.cols());
  const auto r = static_cast<Eigen::Index>(cd.rank);
  cd.cartan_coeffs = canonical_basis(kernel);
  for (Eigen::Index i = 0; i < r; ++i) cd.cartan_generators.push_back(rep.element(cd.cartan_coeffs.row(i).transpose()));

  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) {
      const auto& hi = cd.cartan_generators[static_cast<std::size_t>(i)];
      const auto& hj = cd.cartan_generators[static_cast<std::size_t>(j)];
      if ((hi * hj - hj * hi).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, rep.normalization))
        throw NumericalError("Cartan extraction failed");
    }

  RootSearch search;
  for (int attempt = 0; attempt < 8 && !search.ok; ++attempt) search = find_roots(rep, cd.cartan_coeffs, random_vector(r, counter).normalized());
  if (!search.ok) throw NumericalError("Cartan extraction failed");
  cd.positive_roots = std::move(search.positive);
  std::sort(cd.positive_roots.begin(), cd.positive_roots.end(),
            [](const PositiveRoot& a, const PositiveRoot& b) { return lex_greater(a.alpha, b.alpha); });
  cd.positive_root_sum = RVector::Zero(r);
  for (const auto& root : cd.positive_roots) {
    cd.roots.push_back(root.alpha);
    cd.roots.push_back(-root.alpha);
    cd.positive_root_sum += root.alpha;
  }

  // Simultaneous eigenbasis of the Cartan generators.
  std::vector<std::pair<RVector, CVector>> states;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const RVector s = random_vector(r, counter);
    CMatrix g = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < r; ++i) g += s(i) * cd.cartan_generators[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(g);
    states.clear();
    bool ok = true;
    for (Eigen::Index c = 0; c < d && ok; ++c) {
      CVector v = solver.eigenvectors().col(c);
      RVector mu(r);
      for (Eigen::Index i = 0; i < r; ++i) {
        const CMatrix& hi = cd.cartan_generators[static_cast<std::size_t>(i)];
        mu(i) = v.dot(hi * v).real();
        if ((hi * v - mu(i) * v).norm() > kRootTol * std::max(1.0, rep.normalization)) ok = false;
      }
      v *= leading_phase(v);
      states.emplace_back(std::move(mu), std::move(v));
    }
    if (ok) break;
    if (attempt == 7) throw NumericalError("Cartan extraction failed");
  }
  std::stable_sort(states.begin(), states.end(), [](const auto& a, const auto& b) { return lex_greater(a.first, b.first); });
  cd.weight_basis.resize(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    cd.weight_basis.col(c) = states[static_cast<std::size_t>(c)].second;
    cd.weights.push_back(states[static_cast<std::size_t>(c)].first);
  }
  cd.highest_index = 0;
  cd.highest_weight = cd.weights.front();
  cd.highest_unique = d == 1 || lex_greater(cd.weights[0], cd.weights[1]);

  // Aligned orthonormal basis of the algebra.
  cd.aligned_basis.resize(k, k);
  cd.aligned_basis.topRows(r) = cd.cartan_coeffs;
  for (std::size_t p = 0; p < cd.positive_roots.size(); ++p) {
    const CVector& u = cd.positive_roots[p].coeffs;
    const auto row = r + 2 * static_cast<Eigen::Index>(p);
    cd.aligned_basis.row(row) = std::sqrt(2.0) * u.real().transpose();
    cd.aligned_basis.row(row + 1) = std::sqrt(2.0) * u.imag().transpose();
  }
  if ((cd.aligned_basis * cd.aligned_basis.transpose() - RMatrix::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-8)
    throw NumericalError("Cartan extraction failed");
  return cd;
}

PureState highest_weight_state(const CartanData& cd) {
  if (!cd.highest_unique) throw AlgebraError("highest weight not unique");
  return PureState::normalized(cd.weight_basis.col(cd.highest_index));
}

CMatrix unitary_exp(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  const CVector phases = (kImag * solver.eigenvalues().cast<Complex>()).array().exp();
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

PureState generate_gcs(const AlgebraRep& rep, const CartanData& cd, std::span<const double> params) {
  if (params.size() != rep.dim_algebra) throw AlgebraError("GCS parameter vector must have length K");
  RVector coeffs(static_cast<Eigen::Index>(params.size()));
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (!std::isfinite(params[k])) throw NumericalError("GCS parameters must be finite");
    coeffs(static_cast<Eigen::Index>(k)) = params[k];
  }
  const PureState top = highest_weight_state(cd);
  return PureState::normalized(unitary_exp(rep.element(coeffs)) * top.amplitudes());
}

Su2Triple su2_triple_for_root(const CartanData& cd, std::size_t root_index) {
  if (root_index >= cd.positive_roots.size()) throw AlgebraError("root index out of range");
  const auto& root = cd.positive_roots[root_index];
  const double norm = root.alpha.norm();
  Su2Triple t;
  t.e3 = CMatrix::Zero(root.raising.rows(), root.raising.cols());
  for (std::size_t i = 0; i < cd.rank; ++i) t.e3 += root.alpha(static_cast<Eigen::Index>(i)) * cd.cartan_generators[i];
  t.e3 /= norm * norm;
  t.eplus = root.raising / norm;
  t.eminus = root.lowering / norm;
  return t;
}

WeightLabel weight_string(const CartanData& cd, std::size_t root_index, const CVector& weight_state) {
  const Su2Triple t = su2_triple_for_root(cd, root_index);
  const auto walk = [&](const CMatrix& op) {
    CVector w = weight_state.normalized();
    int steps = 0;
    for (Eigen::Index guard = 0; guard < w.size(); ++guard) {
      w = op * w;
      const double n = w.norm();
      if (n < 1e-10) break;
      w /= n;
      ++steps;
    }
    return steps;
  };
  const int up = walk(t.eplus);
  const int down = walk(t.eminus);
  return {0.5 * (up + down), 0.5 * (down - up)};
}

}  // namespace lieloc
