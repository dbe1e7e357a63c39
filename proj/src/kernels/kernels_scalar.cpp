#include "kernels_impl.hpp"

namespace lieloc::kernels::detail {

// Reference kernels. Real and imaginary parts are accumulated explicitly so
// the arithmetic does not depend on how the standard library expands
// complex multiplication.

void matvec_scalar(const Complex* a, std::size_t n, const Complex* x, Complex* y) {
  for (std::size_t r = 0; r < n; ++r) y[r] = Complex{0.0, 0.0};
  for (std::size_t c = 0; c < n; ++c) {
    const double xr = x[c].real();
    const double xi = x[c].imag();
    const Complex* col = a + c * n;
    for (std::size_t r = 0; r < n; ++r) {
      const double ar = col[r].real();
      const double ai = col[r].imag();
      y[r] = Complex{y[r].real() + (ar * xr - ai * xi), y[r].imag() + (ai * xr + ar * xi)};
    }
  }
}

Complex dot_scalar(const Complex* x, const Complex* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += x[k].real() * y[k].real() + x[k].imag() * y[k].imag();
    im += x[k].real() * y[k].imag() - x[k].imag() * y[k].real();
  }
  return {re, im};
}

void axpy_scalar(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real();
    const double xi = x[k].imag();
    y[k] = Complex{y[k].real() + (ar * xr - ai * xi), y[k].imag() + (ar * xi + ai * xr)};
  }
}

double norm_sq_scalar(const Complex* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  return acc;
}

}  // namespace lieloc::kernels::detail
