#include <cmath>

#include "safecast/error.hpp"
#include "safecast/preprocess.hpp"

namespace safecast {

namespace {

struct TwoSum {
  double sum;
  double err;  // a + b == sum + err exactly
};

TwoSum two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

}  // namespace

Differenced difference(const TimeSeries& s, int order) {
  if (order < 0) raise(ErrorKind::InvalidArgument, "difference order must be >= 0");
  if (s.size() <= static_cast<std::size_t>(order)) {
    raise(ErrorKind::TooShort, "series '" + s.name() + "' of length " + std::to_string(s.size()) +
                                   " cannot be differenced " + std::to_string(order) + " times");
  }
  std::vector<double> v(s.values().begin(), s.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      raise(ErrorKind::NonFiniteValue,
            "series '" + s.name() + "' has non-finite value at index " + std::to_string(i));
    }
  }

  DiffState state;
  state.order = order;
  state.original_start = s.start();
  state.original_length = s.size();
  for (int pass = 0; pass < order; ++pass) {
    state.initial_values.push_back(v.front());
    std::vector<double> next(v.size() - 1);
    std::vector<double> corr(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const TwoSum d = two_sum(v[i + 1], -v[i]);
      next[i] = d.sum;
      corr[i] = d.err;
    }
    state.corrections.push_back(std::move(corr));
    v = std::move(next);
  }
  return {TimeSeries(s.name(), advance(s.start(), s.freq(), order), s.freq(), std::move(v)),
          std::move(state)};
}

TimeSeries undifference(const TimeSeries& diffed, const DiffState& state) {
  const auto order = static_cast<std::size_t>(state.order);
  if (state.initial_values.size() != order || state.corrections.size() != order ||
      state.original_length != diffed.size() + order ||
      diffed.start() != advance(state.original_start, diffed.freq(), state.order)) {
    raise(ErrorKind::StateMismatch, "difference state of order " + std::to_string(state.order) +
                                        " does not match series '" + diffed.name() + "'");
  }
  std::vector<double> v(diffed.values().begin(), diffed.values().end());
  for (std::size_t pass = order; pass-- > 0;) {
    const std::vector<double>& corr = state.corrections[pass];
    if (corr.size() != v.size()) raise(ErrorKind::StateMismatch, "corrupt difference state");
    std::vector<double> prev(v.size() + 1);
    prev[0] = state.initial_values[pass];
    for (std::size_t i = 0; i < v.size(); ++i) {
      // prev[i] + v[i] + corr[i] is exactly the original value.
      const TwoSum head = two_sum(prev[i], v[i]);
      prev[i + 1] = head.sum + (head.err + corr[i]);
    }
    v = std::move(prev);
  }
  return TimeSeries(diffed.name(), state.original_start, diffed.freq(), std::move(v));
}

}  // namespace safecast
