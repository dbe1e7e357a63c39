#include <cassert>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace lieloc::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &detail::matvec_scalar, &detail::dot_scalar,
                              &detail::axpy_scalar, &detail::norm_sq_scalar};

#if LIELOC_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2{Isa::avx2, &detail::matvec_avx2, &detail::dot_avx2, &detail::axpy_avx2,
                            &detail::norm_sq_avx2};

bool host_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& choose() {
  const char* env = std::getenv("LIELOC_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return kScalar;
  if (const KernelTable* t = avx2_table()) return *t;
  return kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if LIELOC_HAVE_AVX2_KERNELS
  static const bool ok = host_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = choose();
  return table;
}

void matvec(std::span<const Complex> a, std::span<const Complex> x, std::span<Complex> y) {
  assert(a.size() == x.size() * x.size() && y.size() == x.size());
  active().matvec(a.data(), x.size(), x.data(), y.data());
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

double norm_sq(std::span<const Complex> x) { return active().norm_sq(x.data(), x.size()); }

}  // namespace lieloc::kernels
