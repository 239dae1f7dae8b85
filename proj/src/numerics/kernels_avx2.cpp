// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace encforge::numerics::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

double dot(std::size_t n, const double* a, const double* b) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4),
                           acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void gemv(std::size_t rows, std::size_t cols, const double* w, const double* x,
          double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(cols, w + r * cols, x);
}

void gemv_acc(std::size_t rows, std::size_t cols, const double* w,
              const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] += dot(cols, w + r * cols, x);
}

void axpy(std::size_t n, double alpha, const double* x, double* y) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i,
                     _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_t_acc(std::size_t rows, std::size_t cols, const double* w,
                const double* g, double* out) {
  for (std::size_t r = 0; r < rows; ++r) axpy(cols, g[r], w + r * cols, out);
}

void ger_acc(std::size_t rows, std::size_t cols, const double* g,
             const double* x, double* grad_w) {
  for (std::size_t r = 0; r < rows; ++r) axpy(cols, g[r], x, grad_w + r * cols);
}

}  // namespace encforge::numerics::kernels::avx2
