#pragma once

// Complex double inner-loop kernels with a scalar reference implementation
// and an AVX2/FMA variant picked at runtime.
//
// Matrices are dense, square and column-major (Eigen's default layout), with
// std::complex<double> stored as interleaved (re, im) pairs.

#include <cstddef>
#include <span>
#include <string_view>

#include "lieloc/types.hpp"

namespace lieloc::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  // y = A x, A is n x n column-major.
  void (*matvec)(const Complex* a, std::size_t n, const Complex* x, Complex* y);
  // sum_k conj(x_k) y_k
  Complex (*dot)(const Complex* x, const Complex* y, std::size_t n);
  // y += alpha x
  void (*axpy)(Complex alpha, const Complex* x, Complex* y, std::size_t n);
  // sum_k |x_k|^2
  double (*norm_sq)(const Complex* x, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant was not compiled in or the host lacks AVX2+FMA.
const KernelTable* avx2_table();

/// Table used by the span wrappers below. Chosen once per process: AVX2 when
/// available, unless LIELOC_SIMD=scalar is set in the environment.
const KernelTable& active();

void matvec(std::span<const Complex> a, std::span<const Complex> x, std::span<Complex> y);
Complex dot(std::span<const Complex> x, std::span<const Complex> y);
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
double norm_sq(std::span<const Complex> x);

// Eigen convenience overloads.
inline std::span<const Complex> view(const CVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
inline std::span<Complex> view(CVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
inline std::span<const Complex> view(const CMatrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }

}  // namespace lieloc::kernels
