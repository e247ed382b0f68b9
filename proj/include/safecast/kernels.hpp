#pragma once

// Reduction kernels used by the regressor and the metrics.
//
// Every kernel accumulates in four interleaved lanes (element i goes to lane
// i % 4 for the largest multiple of four), combines the lanes as
// ((l0 + l1) + (l2 + l3)), then adds the tail elements left to right. The
// scalar reference and the AVX2 variant follow this order exactly, without
// FMA, so both produce bit-identical results and backend selection never
// changes a model file.

#include <span>
#include <string_view>

namespace safecast::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b) noexcept;
bool backend_supported(Backend b) noexcept;

/// Backend used by the dispatching entry points. Chosen at first use from
/// CPU features; SAFECAST_KERNELS=scalar forces the reference path.
Backend active_backend() noexcept;
/// Overrides the dispatch choice. Throws InvalidArgument if unsupported.
void force_backend(Backend b);

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double sum_abs_diff(std::span<const double> a, std::span<const double> b);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double sum(const double* a, std::size_t n) noexcept;
double sum_abs_diff(const double* a, const double* b, std::size_t n) noexcept;
double sum_sq_diff(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double sum(const double* a, std::size_t n) noexcept;
double sum_abs_diff(const double* a, const double* b, std::size_t n) noexcept;
double sum_sq_diff(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace avx2

}  // namespace safecast::kernels
