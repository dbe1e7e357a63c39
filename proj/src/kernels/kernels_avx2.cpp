#include "kernels_impl.hpp"

#if LIELOC_HAVE_AVX2_KERNELS

#include <immintrin.h>

#define LIELOC_AVX2 __attribute__((target("avx2,fma")))

namespace lieloc::kernels::detail {

namespace {

// One __m256d holds two interleaved complex numbers [r0 i0 r1 i1].

LIELOC_AVX2 inline __m256d load2(const Complex* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

LIELOC_AVX2 inline void store2(Complex* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}

// a * (xr + i xi) for both lanes of a.
LIELOC_AVX2 inline __m256d cmul_bcast(__m256d a, __m256d xr, __m256d xi) {
  const __m256d swapped = _mm256_permute_pd(a, 0b0101);  // [i0 r0 i1 r1]
  return _mm256_fmaddsub_pd(a, xr, _mm256_mul_pd(swapped, xi));
}

LIELOC_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

LIELOC_AVX2 void matvec_avx2(const Complex* a, std::size_t n, const Complex* x, Complex* y) {
  const std::size_t paired = n & ~std::size_t{1};
  for (std::size_t r = 0; r < paired; r += 2) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t c = 0; c < n; ++c) {
      const __m256d xr = _mm256_set1_pd(x[c].real());
      const __m256d xi = _mm256_set1_pd(x[c].imag());
      acc = _mm256_add_pd(acc, cmul_bcast(load2(a + c * n + r), xr, xi));
    }
    store2(y + r, acc);
  }
  if (paired != n) {
    const std::size_t r = n - 1;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      const Complex av = a[c * n + r];
      re += av.real() * x[c].real() - av.imag() * x[c].imag();
      im += av.imag() * x[c].real() + av.real() * x[c].imag();
    }
    y[r] = Complex{re, im};
  }
}

LIELOC_AVX2 Complex dot_avx2(const Complex* x, const Complex* y, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();  // [xr*yr, xi*yi, ...]
  __m256d acc_im = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  const std::size_t paired = n & ~std::size_t{1};
  for (std::size_t k = 0; k < paired; k += 2) {
    const __m256d xv = load2(x + k);
    const __m256d yv = load2(y + k);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_im);
  }
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  double re = hsum(acc_re);
  double im = hsum(_mm256_mul_pd(acc_im, sign));
  if (paired != n) {
    const std::size_t k = n - 1;
    re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
    im += x[k].real() * y[k].imag() - x[k].imag() * y[k].real();
  }
  return {re, im};
}

LIELOC_AVX2 void axpy_avx2(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const std::size_t paired = n & ~std::size_t{1};
  for (std::size_t k = 0; k < paired; k += 2) {
    store2(y + k, _mm256_add_pd(load2(y + k), cmul_bcast(load2(x + k), ar, ai)));
  }
  if (paired != n) {
    const std::size_t k = n - 1;
    y[k] = Complex{y[k].real() + (alpha.real() * x[k].real() - alpha.imag() * x[k].imag()),
                   y[k].imag() + (alpha.real() * x[k].imag() + alpha.imag() * x[k].real())};
  }
}

LIELOC_AVX2 double norm_sq_avx2(const Complex* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t paired = n & ~std::size_t{1};
  for (std::size_t k = 0; k < paired; k += 2) {
    const __m256d v = load2(x + k);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = hsum(acc);
  if (paired != n) total += x[n - 1].real() * x[n - 1].real() + x[n - 1].imag() * x[n - 1].imag();
  return total;
}

}  // namespace lieloc::kernels::detail

#endif  // LIELOC_HAVE_AVX2_KERNELS
