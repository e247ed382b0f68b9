#include "safecast/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "safecast/error.hpp"
#include "safecast/random.hpp"
#include "safecast/stats.hpp"

namespace safecast {

LagSet::LagSet(std::vector<int> lags) : lags_(std::move(lags)) {
  if (lags_.empty()) raise(ErrorKind::InvalidArgument, "lag set is empty");
  for (std::size_t i = 0; i < lags_.size(); ++i) {
    if (lags_[i] < 1) raise(ErrorKind::InvalidArgument, "lags must be >= 1");
    if (i > 0 && lags_[i] <= lags_[i - 1]) {
      raise(ErrorKind::InvalidArgument, "lags must be strictly increasing");
    }
  }
}

LagSet LagSet::range(int first, int last) {
  if (first < 1 || last < first) raise(ErrorKind::InvalidArgument, "invalid lag range");
  std::vector<int> lags;
  for (int l = first; l <= last; ++l) lags.push_back(l);
  return LagSet(std::move(lags));
}

void fill_feature_row(std::span<const double> window, const LagSet& lags,
                      std::span<const double> exog_row, std::span<double> out) {
  const std::size_t max_lag = static_cast<std::size_t>(lags.max_lag());
  std::size_t c = 0;
  for (int lag : lags.lags()) out[c++] = window[max_lag - static_cast<std::size_t>(lag)];
  for (double v : exog_row) out[c++] = v;
}

namespace {

void require_finite(std::span<const double> v, const std::string& what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      raise(ErrorKind::NonFiniteValue, what + " has non-finite value at index " + std::to_string(i));
    }
  }
}

std::vector<double> exog_row(const ExogMatrix* exog, std::size_t row) {
  if (exog == nullptr) return {};
  std::vector<double> r(exog->cols());
  for (std::size_t c = 0; c < r.size(); ++c) r[c] = exog->at(row, c);
  return r;
}

void check_future_exog(const FittedForecaster& f, Timestamp first_step, std::size_t steps,
                       const ExogMatrix* exog) {
  if (f.exog_columns.empty()) {
    if (exog != nullptr && exog->cols() > 0) {
      raise(ErrorKind::ExogShape, "model was fitted without exog but exog was supplied");
    }
    return;
  }
  if (exog == nullptr) {
    raise(ErrorKind::ExogMissing, "model was fitted with " + std::to_string(f.exog_columns.size()) +
                                      " exog columns but none were supplied");
  }
  if (exog->column_names() != f.exog_columns) {
    raise(ErrorKind::ExogShape, "future exog has " + std::to_string(exog->cols()) +
                                    " columns that do not match the " +
                                    std::to_string(f.exog_columns.size()) + " fitted columns");
  }
  if (exog->rows() != steps) {
    raise(ErrorKind::ExogShape, "future exog has " + std::to_string(exog->rows()) +
                                    " rows, expected " + std::to_string(steps));
  }
  if (!(exog->freq() == f.freq)) raise(ErrorKind::FrequencyMismatch, "future exog frequency differs");
  if (exog->start() != first_step) {
    raise(ErrorKind::AlignmentError, "future exog starts at " + exog->start().iso() +
                                         ", forecast starts at " + first_step.iso());
  }
}

// Runs the recursion once. `noise` is called per step and its value is added to
// the prediction before it enters the window.
template <typename Noise>
std::vector<double> recurse(const FittedForecaster& f, std::span<const double> window,
                            std::size_t steps, const std::vector<std::vector<double>>& exog_rows,
                            Noise&& noise) {
  const std::size_t max_lag = static_cast<std::size_t>(f.lags.max_lag());
  // history[k .. k + max_lag) is the window before step k.
  std::vector<double> history(window.begin(), window.end());
  history.reserve(max_lag + steps);
  std::vector<double> row(f.regressor.feature_count);
  std::vector<double> out(steps);
  static const std::vector<double> kNoExog;
  for (std::size_t k = 0; k < steps; ++k) {
    const std::span<const double> w(history.data() + k, max_lag);
    fill_feature_row(w, f.lags, exog_rows.empty() ? kNoExog : exog_rows[k], row);
    const double value = predict_regressor(f.regressor, row) + noise();
    out[k] = value;
    history.push_back(value);
  }
  return out;
}

std::vector<std::vector<double>> future_rows(const ExogMatrix* exog, std::size_t steps) {
  std::vector<std::vector<double>> rows;
  if (exog == nullptr || exog->cols() == 0) return rows;
  rows.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) rows.push_back(exog_row(exog, k));
  return rows;
}

void check_window(const FittedForecaster& f, std::span<const double> window) {
  if (window.size() != static_cast<std::size_t>(f.lags.max_lag())) {
    raise(ErrorKind::DimensionMismatch, "forecast window has " + std::to_string(window.size()) +
                                            " values, expected " + std::to_string(f.lags.max_lag()));
  }
  require_finite(window, "forecast window");
}

}  // namespace

LagMatrix build_lag_matrix(const TimeSeries& y, const LagSet& lags, const ExogMatrix* exog) {
  const std::size_t max_lag = static_cast<std::size_t>(lags.max_lag());
  if (y.size() <= max_lag) {
    raise(ErrorKind::TooShort, "series '" + y.name() + "' of length " + std::to_string(y.size()) +
                                   " is too short for max lag " + std::to_string(max_lag));
  }
  require_finite(y.values(), "series '" + y.name() + "'");
  std::size_t exog_offset = 0;
  std::size_t exog_cols = 0;
  if (exog != nullptr) {
    exog_offset = align(y, *exog).offset();
    exog_cols = exog->cols();
  }

  const std::size_t rows = y.size() - max_lag;
  LagMatrix out{FeatureMatrix(rows, lags.size() + exog_cols), std::vector<double>(rows), max_lag};
  const auto values = y.values();
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = max_lag + r;
    const std::vector<double> ex = exog_row(exog, exog_offset + t);
    fill_feature_row(values.subspan(t - max_lag, max_lag), lags, ex, out.features.row(r));
    out.targets[r] = values[t];
  }
  return out;
}

// An exog column that is exactly zero on every training row (a holiday flag
// when no holiday falls inside the window) carries no information. It is left
// out of the solve and gets coefficient 0, the minimum-norm solution, instead
// of making every holiday-free OLS fit singular.
static FittedRegressor fit_skipping_inert(const RegressorSpec& spec, const FeatureMatrix& x,
                                          std::span<const double> y, std::size_t n_lags) {
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    bool zero = c >= n_lags;
    for (std::size_t r = 0; zero && r < x.rows(); ++r) zero = x(r, c) == 0.0;
    if (!zero) keep.push_back(c);
  }
  if (keep.size() == x.cols()) return fit_regressor(spec, x, y);
  FeatureMatrix reduced(x.rows(), keep.size());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t j = 0; j < keep.size(); ++j) reduced(r, j) = x(r, keep[j]);
  }
  const FittedRegressor sub = fit_regressor(spec, reduced, y);
  FittedRegressor full{std::vector<double>(x.cols(), 0.0), sub.intercept, x.cols()};
  for (std::size_t j = 0; j < keep.size(); ++j) full.coefficients[keep[j]] = sub.coefficients[j];
  return full;
}

FittedForecaster fit_forecaster(const TimeSeries& y, const LagSet& lags, const ExogMatrix* exog,
                                const RegressorSpec& spec, ProvenanceRecord provenance) {
  const LagMatrix lm = build_lag_matrix(y, lags, exog);
  FittedRegressor reg = fit_skipping_inert(spec, lm.features, lm.targets, lags.size());

  std::vector<double> residuals(lm.targets.size());
  for (std::size_t r = 0; r < residuals.size(); ++r) {
    residuals[r] = lm.targets[r] - predict_regressor(reg, lm.features.row(r));
  }
  const std::size_t max_lag = static_cast<std::size_t>(lags.max_lag());
  const auto values = y.values();
  return FittedForecaster{
      lags,
      std::move(reg),
      exog != nullptr ? exog->column_names() : std::vector<std::string>{},
      std::move(residuals),
      {y.start(), y.end()},
      y.freq(),
      std::vector<double>(values.end() - static_cast<std::ptrdiff_t>(max_lag), values.end()),
      spec.seed,
      std::move(provenance),
  };
}

std::vector<double> predict_recursive_from(const FittedForecaster& f,
                                           std::span<const double> window, Timestamp first_step,
                                           std::size_t steps, const ExogMatrix* exog_future) {
  if (steps == 0) raise(ErrorKind::InvalidArgument, "forecast horizon must be >= 1");
  check_window(f, window);
  check_future_exog(f, first_step, steps, exog_future);
  return recurse(f, window, steps, future_rows(exog_future, steps), [] { return 0.0; });
}

std::vector<double> predict_recursive(const FittedForecaster& f, std::size_t steps,
                                      const ExogMatrix* exog_future) {
  return predict_recursive_from(f, f.last_window, f.forecast_origin(), steps, exog_future);
}

IntervalForecast predict_interval_from(const FittedForecaster& f, std::span<const double> window,
                                       Timestamp first_step, std::size_t steps,
                                       const ExogMatrix* exog_future, double coverage,
                                       std::size_t n_boot) {
  if (f.residuals.empty()) raise(ErrorKind::NoResiduals, "model has no in-sample residuals");
  if (!(coverage > 0.0 && coverage < 1.0)) {
    raise(ErrorKind::InvalidArgument, "coverage must lie in (0, 1)");
  }
  if (n_boot == 0) raise(ErrorKind::InvalidArgument, "n_boot must be >= 1");
  if (steps == 0) raise(ErrorKind::InvalidArgument, "forecast horizon must be >= 1");
  check_window(f, window);
  check_future_exog(f, first_step, steps, exog_future);
  const auto rows = future_rows(exog_future, steps);

  IntervalForecast out;
  out.coverage = coverage;
  out.point = recurse(f, window, steps, rows, [] { return 0.0; });

  // paths_by_step[k][b], filled in path order.
  std::vector<std::vector<double>> paths_by_step(steps, std::vector<double>(n_boot));
  const std::size_t n_res = f.residuals.size();
  for (std::size_t b = 0; b < n_boot; ++b) {
    SplitMix64 rng(derive_seed(f.seed, b));
    const std::vector<double> path =
        recurse(f, window, steps, rows, [&] { return f.residuals[rng.index(n_res)]; });
    for (std::size_t k = 0; k < steps; ++k) paths_by_step[k][b] = path[k];
  }

  const double alpha = 1.0 - coverage;
  out.lower.resize(steps);
  out.upper.resize(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    std::vector<double>& v = paths_by_step[k];
    std::sort(v.begin(), v.end());
    out.lower[k] = quantile_sorted(v, alpha / 2.0);
    out.upper[k] = quantile_sorted(v, 1.0 - alpha / 2.0);
  }
  return out;
}

IntervalForecast predict_interval(const FittedForecaster& f, std::size_t steps,
                                  const ExogMatrix* exog_future, double coverage,
                                  std::size_t n_boot) {
  return predict_interval_from(f, f.last_window, f.forecast_origin(), steps, exog_future, coverage,
                               n_boot);
}

TimeSeries synth_load(std::size_t n, std::uint64_t seed, const SynthLoadParams& params) {
  if (n == 0) raise(ErrorKind::InvalidArgument, "synthetic series length must be >= 1");
  SplitMix64 rng(seed);
  std::vector<double> values(n);
  const double pi = std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const Timestamp t = advance(params.start, params.freq, static_cast<std::int64_t>(i));
    const double trend =
        n == 1 ? 0.0 : params.trend_end * static_cast<double>(i) / static_cast<double>(n - 1);
    const double hour = t.hour();
    const double daily = params.daily_amplitude * std::sin(2.0 * pi * hour / 24.0 - pi / 2.0);
    const double weekly = t.day_of_week() < 5 ? params.weekday_bonus : 0.0;
    const double noise = params.noise_sd * rng.gaussian();
    values[i] = params.base + trend + daily + weekly + noise;
  }
  return TimeSeries("load", params.start, params.freq, std::move(values));
}

}  // namespace safecast
