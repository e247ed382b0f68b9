#include <atomic>
#include <cstdlib>
#include <string>

#include "safecast/error.hpp"
#include "safecast/kernels.hpp"

namespace safecast::kernels {

namespace {

Backend detect() noexcept {
  if (const char* env = std::getenv("SAFECAST_KERNELS"); env && std::string(env) == "scalar") {
    return Backend::Scalar;
  }
  return backend_supported(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& selected() noexcept {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    raise(ErrorKind::DimensionMismatch,
          "kernel operands differ in length (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

bool backend_supported(Backend b) noexcept {
  if (b == Backend::Scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() noexcept { return selected().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  if (!backend_supported(b)) {
    raise(ErrorKind::InvalidArgument,
          std::string("kernel backend ") + std::string(backend_name(b)) + " is not supported here");
  }
  selected().store(b, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size());
  return active_backend() == Backend::Avx2 ? avx2::dot(a.data(), b.data(), a.size())
                                           : scalar::dot(a.data(), b.data(), a.size());
}

double sum(std::span<const double> a) {
  return active_backend() == Backend::Avx2 ? avx2::sum(a.data(), a.size())
                                           : scalar::sum(a.data(), a.size());
}

double sum_abs_diff(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size());
  return active_backend() == Backend::Avx2 ? avx2::sum_abs_diff(a.data(), b.data(), a.size())
                                           : scalar::sum_abs_diff(a.data(), b.data(), a.size());
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size());
  return active_backend() == Backend::Avx2 ? avx2::sum_sq_diff(a.data(), b.data(), a.size())
                                           : scalar::sum_sq_diff(a.data(), b.data(), a.size());
}

}  // namespace safecast::kernels
