// AVX2/FMA variants of the dense kernels. This translation unit is the only
// one compiled with -mavx2 -mfma; callers reach it through the runtime
// dispatch in kernels.cpp, never directly.

#if defined(LPMW_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace lpmw::kernels::detail {

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    acc = _mm256_fmadd_pd(va, vb, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vx, vy));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double tv_avx2(const double* p, double u, std::size_t n) {
  const __m256d vu = _mm256_set1_pd(u);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), vu);
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) sum += std::fabs(p[i] - u);
  return 0.5 * sum;
}

}  // namespace lpmw::kernels::detail

#endif  // LPMW_HAVE_AVX2
