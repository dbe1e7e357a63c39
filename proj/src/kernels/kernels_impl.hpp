#pragma once

#include "lieloc/kernels.hpp"

namespace lieloc::kernels::detail {

void matvec_scalar(const Complex* a, std::size_t n, const Complex* x, Complex* y);
Complex dot_scalar(const Complex* x, const Complex* y, std::size_t n);
void axpy_scalar(Complex alpha, const Complex* x, Complex* y, std::size_t n);
double norm_sq_scalar(const Complex* x, std::size_t n);

// Defined only when LIELOC_HAVE_AVX2_KERNELS is 1.
void matvec_avx2(const Complex* a, std::size_t n, const Complex* x, Complex* y);
Complex dot_avx2(const Complex* x, const Complex* y, std::size_t n);
void axpy_avx2(Complex alpha, const Complex* x, Complex* y, std::size_t n);
double norm_sq_avx2(const Complex* x, std::size_t n);

}  // namespace lieloc::kernels::detail

#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
#define LIELOC_HAVE_AVX2_KERNELS 1
#else
#define LIELOC_HAVE_AVX2_KERNELS 0
#endif
