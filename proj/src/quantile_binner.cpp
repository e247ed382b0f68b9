#include <algorithm>
#include <cmath>

#include "safecast/error.hpp"
#include "safecast/preprocess.hpp"
#include "safecast/stats.hpp"

namespace safecast {

namespace {

void require_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      raise(ErrorKind::NonFiniteValue, "binner input " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace

QuantileBinnerState quantile_bin_fit(std::span<const double> values, int n_bins) {
  if (n_bins < 1) raise(ErrorKind::InvalidArgument, "n_bins must be >= 1");
  if (values.empty()) raise(ErrorKind::TooShort, "cannot fit a binner on no values");
  require_finite(values);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  QuantileBinnerState state{n_bins, {}};
  for (int k = 1; k < n_bins; ++k) {
    state.edges.push_back(quantile_sorted(sorted, static_cast<double>(k) / n_bins));
  }
  return state;
}

std::vector<int> quantile_bin_transform(const QuantileBinnerState& state,
                                        std::span<const double> values) {
  require_finite(values);
  std::vector<int> bins;
  bins.reserve(values.size());
  for (double v : values) {
    const auto below = std::lower_bound(state.edges.begin(), state.edges.end(), v);
    bins.push_back(static_cast<int>(below - state.edges.begin()));
  }
  return bins;
}

}  // namespace safecast
