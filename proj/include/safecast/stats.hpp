#pragma once

#include <span>

namespace safecast {

/// Quantile of ascending-sorted data with linear interpolation between order
/// statistics: h = (n - 1) q, x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace safecast
