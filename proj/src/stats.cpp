#include "safecast/stats.hpp"

#include <cmath>
#include <string>

#include "safecast/error.hpp"

namespace safecast {

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) raise(ErrorKind::TooShort, "quantile of empty data");
  if (!(q >= 0.0 && q <= 1.0)) {
    raise(ErrorKind::InvalidArgument, "quantile level " + std::to_string(q) + " outside [0, 1]");
  }
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted[sorted.size() - 1];
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace safecast
