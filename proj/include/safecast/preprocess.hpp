#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "safecast/series.hpp"

namespace safecast {

// ---------------------------------------------------------------------------
// Gap interpolation

/// What to do with NaNs left at the edges after interior interpolation.
enum class MissingMode {
  Raise,        // ResidualMissing
  FfillBfill,   // leading take the first finite value, trailing the last
  Passthrough,  // returned as NaN
};

/// Replaces interior NaN runs by linear interpolation between the nearest
/// finite neighbours, then applies `mode` to the edges. A series without any
/// finite value raises AllMissing under every mode. Infinite values raise
/// NonFiniteValue.
TimeSeries interpolate_linear(const TimeSeries& s, MissingMode mode = MissingMode::Raise);

// ---------------------------------------------------------------------------
// Calendar features

enum class CalendarField { Hour, DayOfWeek, DayOfYear };

struct Period {
  std::string name;
  int n_periods;
  CalendarField column;
  int lo;
  int hi;

  Period(std::string name, int n_periods, CalendarField column, int lo, int hi);
};

struct IndexRange {
  Timestamp start;
  Timestamp end;  // inclusive
  Frequency freq;

  std::size_t rows() const;
};

int calendar_value(Timestamp t, CalendarField field) noexcept;

/// Repeating radial basis encoding of one calendar field. Emits n columns
/// `{name}_0 .. {name}_{n-1}`; column j is exp(-(d_j / w)^2) with u the
/// normalised calendar value (v - lo) / (hi - lo + 1), d_j the distance from u
/// to j / n on the unit circle and w = 1 / n.
ExogMatrix rbf_encode(const IndexRange& range, const Period& period);

/// RBF blocks in the order given, then `holidays` and `is_weekend`.
/// `holidays` holds UTC day numbers; weekdays use Monday = 0.
ExogMatrix build_exog(const IndexRange& range, std::span<const Period> periods,
                      const std::set<std::int64_t>& holidays,
                      const std::set<int>& weekend_days = {5, 6});

// ---------------------------------------------------------------------------
// Equal-frequency binning

struct QuantileBinnerState {
  int n_bins;
  std::vector<double> edges;  // n_bins - 1 non-decreasing cut points
};

QuantileBinnerState quantile_bin_fit(std::span<const double> values, int n_bins);

/// bin(v) = number of edges strictly below v, so a value equal to an edge
/// falls into the lower bin.
std::vector<int> quantile_bin_transform(const QuantileBinnerState& state,
                                        std::span<const double> values);

// ---------------------------------------------------------------------------
// Finite differences

/// State needed to invert difference(). Besides the first value of every pass
/// it keeps the exact rounding error of each subtraction (TwoSum), which makes
/// undifference(difference(s)) reproduce s bit for bit.
struct DiffState {
  int order = 0;
  std::vector<double> initial_values;            // one per pass
  std::vector<std::vector<double>> corrections;  // per pass, one per output value
  Timestamp original_start;
  std::size_t original_length = 0;
};

struct Differenced {
  TimeSeries series;
  DiffState state;
};

Differenced difference(const TimeSeries& s, int order);
TimeSeries undifference(const TimeSeries& diffed, const DiffState& state);

}  // namespace safecast
