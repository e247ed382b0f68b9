#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "safecast/forecast.hpp"

namespace safecast {

// ---------------------------------------------------------------------------
// Splitters

struct FoldPlan {
  std::size_t initial_train_size = 1;
  std::size_t steps = 1;
  std::size_t horizon = 1;
  bool refit = true;
  std::size_t fold_stride = 1;  // emit every fold_stride-th fold
  bool allow_incomplete_final = false;
};

/// train = [0, train_end), test = [train_end, test_end); `index` is k.
struct Fold {
  std::size_t index;
  std::size_t train_end;
  std::size_t test_end;

  std::size_t test_size() const noexcept { return test_end - train_end; }
  bool operator==(const Fold&) const = default;
};

/// Growing-window folds ([0, T0 + k s), [T0 + k s, T0 + k s + h)) for
/// k = 0, stride, 2 stride, ... A fold running past n is dropped unless
/// allow_incomplete_final, which truncates it to n.
std::vector<Fold> time_series_folds(std::size_t n, const FoldPlan& plan);

std::vector<Fold> one_step_folds(std::size_t n, std::size_t initial_train_size);

// ---------------------------------------------------------------------------
// Metrics

enum class MetricKind { MAE, MSE, RMSE, MAPE, MASE };

struct Metric {
  MetricKind kind;
  std::size_t seasonality = 1;  // MASE only

  std::string_view name() const noexcept;
};

/// Accepts `mae`, `mse`, `rmse`, `mape`, `mase`; anything else is MetricUnknown.
Metric parse_metric(std::string_view name, std::size_t mase_seasonality = 1);

/// MASE divides the test MAE by mean |train[t] - train[t - m]| over t >= m.
double compute_metric(const Metric& metric, std::span<const double> actual,
                      std::span<const double> predicted,
                      std::span<const double> train = {});

// ---------------------------------------------------------------------------
// Backtesting

struct FoldScore {
  std::size_t fold;  // Fold::index
  std::vector<double> values;  // one per metric, in request order

  bool operator==(const FoldScore&) const = default;
};

struct BacktestResult {
  std::vector<std::string> metric_names;
  std::vector<FoldScore> per_fold;
  std::vector<double> predictions;
  std::vector<std::size_t> prediction_index;  // series position of each prediction

  bool operator==(const BacktestResult&) const = default;
};

/// refit = true fits on every fold's training slice. refit = false fits once
/// on the first fold's training slice and only moves the forecast origin,
/// seeding each fold's window from the observed series.
BacktestResult backtest(const TimeSeries& y, const ExogMatrix* exog, const LagSet& lags,
                        const RegressorSpec& spec, const FoldPlan& plan,
                        std::span<const Metric> metrics,
                        const ProvenanceRecord& provenance = {});

/// CSV `fold,<metric>...`
std::string metrics_csv(const BacktestResult& result);

}  // namespace safecast
