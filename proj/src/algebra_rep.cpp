#include "lieloc/algebra_rep.hpp"

#include <algorithm>
#include <cmath>

namespace lieloc {

namespace {

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

RMatrix gram_matrix(std::span<const CMatrix> gens) {
  const auto k = static_cast<Eigen::Index>(gens.size());
  RMatrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = (gens[i] * gens[j]).trace().real();
  return g;
}

// Uniform norm lambda of a trace-orthogonal basis; throws if the basis is not one.
double uniform_norm(const RMatrix& gram) {
  const double lambda = gram.diagonal().mean();
  if (!(lambda > 0.0)) throw AlgebraError("generators must have positive trace norm");
  const double off = (gram - RMatrix(gram.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  const double spread = (gram.diagonal().array() - lambda).abs().maxCoeff();
  if (off > 1e-10 * lambda || spread > 1e-10 * lambda)
    throw AlgebraError("generators must be trace-orthogonal with uniform norm");
  return lambda;
}

}  // namespace

RMatrix StructureConstants::adjoint_matrix(const RVector& coeffs) const {
  const auto k = static_cast<Eigen::Index>(k_);
  RMatrix a = RMatrix::Zero(k, k);
  for (Eigen::Index l = 0; l < k; ++l) {
    if (coeffs(l) == 0.0) continue;
    for (Eigen::Index j = 0; j < k; ++j)
      for (Eigen::Index r = 0; r < k; ++r) a(r, j) += coeffs(l) * (*this)(l, j, r);
  }
  return a;
}

CMatrix AlgebraRep::element(const RVector& coeffs) const {
  const auto d = static_cast<Eigen::Index>(dim_hilbert);
  CMatrix m = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < generators.size(); ++k) m += coeffs(static_cast<Eigen::Index>(k)) * generators[k];
  return m;
}

AlgebraRep build_su2_irrep(int two_j) {
  if (two_j <= 0) throw AlgebraError("abelian/trivial representation not semisimple-irreducible in the required sense");
  const double j = 0.5 * two_j;
  const Eigen::Index d = two_j + 1;
  CMatrix jz = CMatrix::Zero(d, d);
  CMatrix jp = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double m = j - static_cast<double>(k);
    jz(k, k) = m;
    if (k > 0) jp(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const CMatrix jm = jp.adjoint();
  CMatrix jx = 0.5 * (jp + jm);
  CMatrix jy = (jp - jm) / Complex{0.0, 2.0};
  return make_algebra_rep({std::move(jx), std::move(jy), std::move(jz)}, "su2:two_j=" + std::to_string(two_j));
}

AlgebraRep build_suN_fundamental(int n) {
  if (n < 2) throw AlgebraError("su(N) requires N >= 2");
  std::vector<CMatrix> gens;
  gens.reserve(static_cast<std::size_t>(n * n - 1));
  for (Eigen::Index b = 1; b < n; ++b) {
    for (Eigen::Index a = 0; a < b; ++a) {
      CMatrix sym = CMatrix::Zero(n, n);
      sym(a, b) = sym(b, a) = 0.5;
      CMatrix anti = CMatrix::Zero(n, n);
      anti(a, b) = Complex{0.0, -0.5};
      anti(b, a) = Complex{0.0, 0.5};
      gens.push_back(std::move(sym));
      gens.push_back(std::move(anti));
    }
    // diag(1, ..., 1, -b, 0, ...) * sqrt(2 / (b (b + 1))) / 2
    CMatrix diag = CMatrix::Zero(n, n);
    const double scale = 0.5 * std::sqrt(2.0 / static_cast<double>(b * (b + 1)));
    for (Eigen::Index m = 0; m < b; ++m) diag(m, m) = scale;
    diag(b, b) = -scale * static_cast<double>(b);
    gens.push_back(std::move(diag));
  }
  return make_algebra_rep(std::move(gens), "suN:n=" + std::to_string(n));
}

StructureConstants compute_structure_constants(std::span<const CMatrix> generators) {
  const std::size_t k = generators.size();
  const double lambda = uniform_norm(gram_matrix(generators));
  StructureConstants f(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const CMatrix c = commutator(generators[i], generators[j]);
      CMatrix residual = c;
      for (std::size_t l = 0; l < k; ++l) {
        const Complex proj = Complex{0.0, -1.0 / lambda} * (c * generators[l]).trace();
        f(i, j, l) = proj.real();
        residual -= kImag * proj.real() * generators[l];
      }
      if (max_abs(residual) > 1e-8 * std::max(1.0, max_abs(c))) throw AlgebraError("not a closed algebra");
    }
  }
  return f;
}

CasimirConstants casimir_constants(const AlgebraRep& rep) {
  const auto d = static_cast<Eigen::Index>(rep.dim_hilbert);
  CMatrix casimir = CMatrix::Zero(d, d);
  for (const auto& x : rep.generators) casimir += x * x;
  const double c_h = casimir.trace().real() / static_cast<double>(d);
  const double scale = std::max(1.0, std::abs(c_h));
  if (max_abs(casimir - c_h * CMatrix::Identity(d, d)) > 1e-8 * scale)
    throw AlgebraError("representation not irreducible");

  const double lambda = rep.normalization;
  double c_adj = 0.0;
  for (std::size_t i = 0; i < rep.generators.size(); ++i) {
    const CMatrix& xi = rep.generators[i];
    CMatrix acc = CMatrix::Zero(d, d);
    for (const auto& xj : rep.generators) acc += commutator(xj, commutator(xj, xi));
    const double ci = (acc * xi).trace().real() / lambda;
    const double tol = 1e-10 * std::max(1.0, max_abs(acc));
    if (max_abs(acc - ci * xi) > tol) throw AlgebraError("adjoint Casimir action is not proportional to the generator");
    if (i == 0) {
      c_adj = ci;
    } else if (std::abs(ci - c_adj) > 1e-10 * std::max(1.0, std::abs(c_adj))) {
      throw AlgebraError("adjoint Casimir differs between generators");
    }
  }

  // f-tensor contraction sum_kl f_ikl f_jkl = c_adj delta_ij
  const auto& f = rep.structure_constants;
  const std::size_t k = f.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) s += f(i, a, b) * f(j, a, b);
      const double expected = (i == j) ? c_adj : 0.0;
      if (std::abs(s - expected) > 1e-10 * std::max(1.0, std::abs(c_adj)))
        throw AlgebraError("structure-constant contraction inconsistent with adjoint Casimir");
    }
  }
  return {c_h, c_adj};
}

AlgebraRep make_algebra_rep(std::vector<CMatrix> generators, std::string label) {
  if (generators.empty()) throw AlgebraError("empty generator set");
  const Eigen::Index d = generators.front().rows();
  for (const auto& x : generators) {
    if (x.rows() != d || x.cols() != d) throw AlgebraError("generators must be square matrices of equal size");
    if (max_abs(x - x.adjoint()) > 1e-12 * std::max(1.0, max_abs(x))) throw AlgebraError("generators must be Hermitian");
  }
  AlgebraRep rep;
  rep.label = std::move(label);
  rep.dim_algebra = generators.size();
  rep.dim_hilbert = static_cast<std::size_t>(d);
  rep.gram = gram_matrix(generators);
  rep.normalization = uniform_norm(rep.gram);
  rep.structure_constants = compute_structure_constants(generators);
  rep.generators = std::move(generators);
  const auto constants = casimir_constants(rep);
  rep.casimir_eigenvalue = constants.c_h;
  rep.adjoint_casimir = constants.c_adj;
  return rep;
}

RepResiduals rep_residuals(const AlgebraRep& rep) {
  RepResiduals r{};
  const auto& gens = rep.generators;
  const auto& f = rep.structure_constants;
  const std::size_t k = gens.size();
  const auto d = static_cast<Eigen::Index>(rep.dim_hilbert);
  for (const auto& x : gens) r.hermiticity = std::max(r.hermiticity, max_abs(x - x.adjoint()));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      CMatrix residual = commutator(gens[i], gens[j]);
      for (std::size_t l = 0; l < k; ++l) {
        residual -= kImag * f(i, j, l) * gens[l];
        r.antisymmetry = std::max({r.antisymmetry, std::abs(f(i, j, l) + f(j, i, l)),
                                   std::abs(f(i, j, l) - f(j, l, i)), std::abs(f(i, j, l) + f(i, l, j))});
        const Complex exact = Complex{0.0, -1.0 / rep.normalization} * (commutator(gens[i], gens[j]) * gens[l]).trace();
        r.imaginary_part = std::max(r.imaginary_part, std::abs(exact.imag()));
      }
      r.closure = std::max(r.closure, max_abs(residual));
    }
  }
  const RMatrix off = rep.gram - RMatrix(rep.gram.diagonal().asDiagonal());
  r.gram_off_diagonal = off.cwiseAbs().maxCoeff();
  r.gram_non_uniform = (rep.gram.diagonal().array() - rep.gram(0, 0)).abs().maxCoeff();
  CMatrix casimir = CMatrix::Zero(d, d);
  for (const auto& x : gens) casimir += x * x;
  r.casimir = max_abs(casimir - rep.casimir_eigenvalue * CMatrix::Identity(d, d));
  for (const auto& xi : gens) {
    CMatrix acc = CMatrix::Zero(d, d);
    for (const auto& xj : gens) acc += commutator(xj, commutator(xj, xi));
    r.adjoint_casimir = std::max(r.adjoint_casimir, max_abs(acc - rep.adjoint_casimir * xi));
  }
  return r;
}

AlgebraRep rescaled(const AlgebraRep& rep, double scale) {
  std::vector<CMatrix> gens;
  gens.reserve(rep.generators.size());
  for (const auto& x : rep.generators) gens.push_back(scale * x);
  return make_algebra_rep(std::move(gens), rep.label);
}

AlgebraRep killing_normalized(const AlgebraRep& rep) { return rescaled(rep, 1.0 / std::sqrt(rep.adjoint_casimir)); }

}  // namespace lieloc
