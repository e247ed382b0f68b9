#include <cmath>

#include "safecast/kernels.hpp"

namespace safecast::kernels::scalar {

namespace {

template <typename Term>
double lane_reduce(std::size_t n, Term term) noexcept {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    l0 += term(i);
    l1 += term(i + 1);
    l2 += term(i + 2);
    l3 += term(i + 3);
  }
  double total = (l0 + l1) + (l2 + l3);
  for (std::size_t i = n4; i < n; ++i) total += term(i);
  return total;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) noexcept {
  return lane_reduce(n, [=](std::size_t i) { return a[i] * b[i]; });
}

double sum(const double* a, std::size_t n) noexcept {
  return lane_reduce(n, [=](std::size_t i) { return a[i]; });
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) noexcept {
  return lane_reduce(n, [=](std::size_t i) { return std::fabs(a[i] - b[i]); });
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) noexcept {
  return lane_reduce(n, [=](std::size_t i) {
    const double d = a[i] - b[i];
    return d * d;
  });
}

}  // namespace safecast::kernels::scalar
