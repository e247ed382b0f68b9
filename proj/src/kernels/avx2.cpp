#include <cmath>

#include "safecast/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define SAFECAST_HAVE_X86 1
#include <immintrin.h>
#else
#define SAFECAST_HAVE_X86 0
#endif

namespace safecast::kernels::avx2 {

#if SAFECAST_HAVE_X86

#define SAFECAST_AVX2 __attribute__((target("avx2")))

namespace {

SAFECAST_AVX2 inline double combine(__m256d acc) noexcept {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

SAFECAST_AVX2 double dot(const double* a, const double* b, std::size_t n) noexcept {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double total = combine(acc);
  for (std::size_t i = n4; i < n; ++i) total += a[i] * b[i];
  return total;
}

SAFECAST_AVX2 double sum(const double* a, std::size_t n) noexcept {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double total = combine(acc);
  for (std::size_t i = n4; i < n; ++i) total += a[i];
  return total;
}

SAFECAST_AVX2 double sum_abs_diff(const double* a, const double* b, std::size_t n) noexcept {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
  }
  double total = combine(acc);
  for (std::size_t i = n4; i < n; ++i) total += std::fabs(a[i] - b[i]);
  return total;
}

SAFECAST_AVX2 double sum_sq_diff(const double* a, const double* b, std::size_t n) noexcept {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = combine(acc);
  for (std::size_t i = n4; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

#else

// Never dispatched on non-x86 targets; defined so the symbols link.
double dot(const double* a, const double* b, std::size_t n) noexcept {
  return scalar::dot(a, b, n);
}
double sum(const double* a, std::size_t n) noexcept { return scalar::sum(a, n); }
double sum_abs_diff(const double* a, const double* b, std::size_t n) noexcept {
  return scalar::sum_abs_diff(a, b, n);
}
double sum_sq_diff(const double* a, const double* b, std::size_t n) noexcept {
  return scalar::sum_sq_diff(a, b, n);
}

#endif

}  // namespace safecast::kernels::avx2
