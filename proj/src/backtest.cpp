#include <optional>

#include "safecast/csv.hpp"
#include "safecast/error.hpp"
#include "safecast/select.hpp"

namespace safecast {

BacktestResult backtest(const TimeSeries& y, const ExogMatrix* exog, const LagSet& lags,
                        const RegressorSpec& spec, const FoldPlan& plan,
                        std::span<const Metric> metrics, const ProvenanceRecord& provenance) {
  if (metrics.empty()) raise(ErrorKind::InvalidArgument, "backtest needs at least one metric");
  validate_series(y, MissingPolicy::Strict);
  std::size_t exog_offset = 0;
  if (exog != nullptr) exog_offset = align(y, *exog).offset();

  const std::vector<Fold> folds = time_series_folds(y.size(), plan);
  BacktestResult result;
  for (const Metric& m : metrics) result.metric_names.emplace_back(m.name());

  const auto values = y.values();
  const std::size_t max_lag = static_cast<std::size_t>(lags.max_lag());
  std::optional<FittedForecaster> model;
  for (const Fold& fold : folds) {
    const TimeSeries train = y.slice_rows(0, fold.train_end);
    if (plan.refit || !model) model = fit_forecaster(train, lags, exog, spec, provenance);

    std::optional<ExogMatrix> future;
    if (exog != nullptr) future = exog->slice_rows(exog_offset + fold.train_end, fold.test_size());
    const std::vector<double> pred = predict_recursive_from(
        *model, values.subspan(fold.train_end - max_lag, max_lag), y.timestamp(fold.train_end),
        fold.test_size(), future ? &*future : nullptr);

    const auto actual = values.subspan(fold.train_end, fold.test_size());
    FoldScore score{fold.index, {}};
    for (const Metric& m : metrics) {
      score.values.push_back(compute_metric(m, actual, pred, values.first(fold.train_end)));
    }
    result.per_fold.push_back(std::move(score));
    for (std::size_t i = 0; i < pred.size(); ++i) {
      result.predictions.push_back(pred[i]);
      result.prediction_index.push_back(fold.train_end + i);
    }
  }
  return result;
}

std::string metrics_csv(const BacktestResult& result) {
  std::string out = "fold";
  for (const std::string& name : result.metric_names) out += "," + name;
  out += "\n";
  for (const FoldScore& row : result.per_fold) {
    out += std::to_string(row.fold);
    for (double v : row.values) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

}  // namespace safecast
