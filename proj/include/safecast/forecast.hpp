#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "safecast/provenance.hpp"
#include "safecast/regress.hpp"
#include "safecast/series.hpp"

namespace safecast {

/// Strictly increasing positive lags.
class LagSet {
 public:
  explicit LagSet(std::vector<int> lags);
  /// {first, first + 1, ..., last}
  static LagSet range(int first, int last);

  std::span<const int> lags() const noexcept { return lags_; }
  std::size_t size() const noexcept { return lags_.size(); }
  int max_lag() const noexcept { return lags_.back(); }

  bool operator==(const LagSet&) const = default;

 private:
  std::vector<int> lags_;
};

/// Writes one feature row: the lag values taken from `window` (the max_lag
/// observations immediately preceding the target, oldest first) followed by
/// `exog_row`. Training and prediction both go through this function.
void fill_feature_row(std::span<const double> window, const LagSet& lags,
                      std::span<const double> exog_row, std::span<double> out);

struct LagMatrix {
  FeatureMatrix features;
  std::vector<double> targets;
  std::size_t first_target = 0;  // series index of targets[0]
};

/// One row per target index t in [max_lag, len): lags y[t - l] for l in the
/// lag set, then exog row t. Rejects non-finite targets (NonFiniteValue).
LagMatrix build_lag_matrix(const TimeSeries& y, const LagSet& lags,
                           const ExogMatrix* exog = nullptr);

struct FittedForecaster {
  LagSet lags;
  FittedRegressor regressor;
  std::vector<std::string> exog_columns;
  std::vector<double> residuals;  // in-sample one-step residuals
  std::pair<Timestamp, Timestamp> training_range;
  Frequency freq;
  std::vector<double> last_window;  // final max_lag training values
  std::uint64_t seed = 0;
  ProvenanceRecord provenance;

  /// Timestamp of the first out-of-sample step.
  Timestamp forecast_origin() const { return advance(training_range.second, freq, 1); }

  bool operator==(const FittedForecaster&) const = default;
};

/// Exog columns that are identically zero over the training rows get
/// coefficient 0 and stay out of the solve.
FittedForecaster fit_forecaster(const TimeSeries& y, const LagSet& lags, const ExogMatrix* exog,
                                const RegressorSpec& spec, ProvenanceRecord provenance);

/// Recursive h-step point forecast from the end of the training data.
std::vector<double> predict_recursive(const FittedForecaster& f, std::size_t steps,
                                      const ExogMatrix* exog_future = nullptr);

/// Same recursion from an arbitrary origin: `window` holds the max_lag
/// observations preceding `first_step`.
std::vector<double> predict_recursive_from(const FittedForecaster& f,
                                           std::span<const double> window, Timestamp first_step,
                                           std::size_t steps, const ExogMatrix* exog_future);

struct IntervalForecast {
  std::vector<double> point;
  std::vector<double> lower;
  std::vector<double> upper;
  double coverage = 0.0;

  bool operator==(const IntervalForecast&) const = default;
};

/// Bootstrap interval. Each of n_boot paths re-runs the recursion, adding a
/// residual drawn with replacement to every one-step prediction before it is
/// fed back. Path b draws from SplitMix64(derive_seed(f.seed, b)). Bounds are
/// the (1 - coverage)/2 and (1 + coverage)/2 linear-interpolation quantiles of
/// the paths at each step; the point forecast is the noise-free recursion.
IntervalForecast predict_interval(const FittedForecaster& f, std::size_t steps,
                                  const ExogMatrix* exog_future, double coverage,
                                  std::size_t n_boot);

IntervalForecast predict_interval_from(const FittedForecaster& f, std::span<const double> window,
                                       Timestamp first_step, std::size_t steps,
                                       const ExogMatrix* exog_future, double coverage,
                                       std::size_t n_boot);

// ---------------------------------------------------------------------------
// Synthetic load

struct SynthLoadParams {
  Timestamp start = Timestamp::from_civil(2025, 1, 1);
  Frequency freq = Frequency::hours(1);
  double base = 50.0;
  double trend_end = 2.0;       // linear trend from 0 to trend_end over the series
  double daily_amplitude = 4.0;
  double weekday_bonus = 1.5;   // added Monday..Friday
  double noise_sd = 0.5;
};

/// base + trend + daily_amplitude sin(2 pi hour / 24 - pi / 2)
///      + weekday_bonus [weekday < 5] + N(0, noise_sd^2)
TimeSeries synth_load(std::size_t n, std::uint64_t seed, const SynthLoadParams& params = {});

}  // namespace safecast
