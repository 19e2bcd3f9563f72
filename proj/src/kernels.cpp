#include "lpmw/kernels.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace lpmw::kernels {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double tv_scalar(const double* p, double u, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::fabs(p[i] - u);
  return 0.5 * sum;
}

#if defined(LPMW_HAVE_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
double tv_avx2(const double* p, double u, std::size_t n);
#endif

struct Impl {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*tv)(const double*, double, std::size_t);
  Backend backend;
};

constexpr Impl kScalar{dot_scalar, axpy_scalar, tv_scalar, Backend::Scalar};
#if defined(LPMW_HAVE_AVX2)
const Impl kAvx2{dot_avx2, axpy_avx2, tv_avx2, Backend::Avx2};
#endif

const Impl* g_forced = nullptr;

const Impl& impl() {
  if (g_forced) return *g_forced;
#if defined(LPMW_HAVE_AVX2)
  static const Impl& detected = avx2_available() ? kAvx2 : kScalar;
#else
  static const Impl& detected = kScalar;
#endif
  return detected;
}

}  // namespace detail

bool avx2_available() {
#if defined(LPMW_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active() { return detail::impl().backend; }

void force(Backend b) {
  if (b == Backend::Scalar) {
    detail::g_forced = &detail::kScalar;
    return;
  }
#if defined(LPMW_HAVE_AVX2)
  if (avx2_available()) {
    detail::g_forced = &detail::kAvx2;
    return;
  }
#endif
  throw std::runtime_error("kernels::force: requested backend unavailable");
}

void reset() { detail::g_forced = nullptr; }

const char* name(Backend b) { return b == Backend::Scalar ? "scalar" : "avx2"; }

double dot(const double* a, const double* b, std::size_t n) {
  return detail::impl().dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  detail::impl().axpy(alpha, x, y, n);
}

double tv_from_uniform(const double* p, double uniform_mass, std::size_t n) {
  return detail::impl().tv(p, uniform_mass, n);
}

void vec_times_matrix(const double* row, const double* matrix, double* out, std::size_t n) {
  std::memset(out, 0, n * sizeof(double));
  for (std::size_t k = 0; k < n; ++k) {
    const double w = row[k];
    if (w != 0.0) axpy(w, matrix + k * n, out, n);
  }
}

}  // namespace lpmw::kernels
