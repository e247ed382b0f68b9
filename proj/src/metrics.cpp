#include <cmath>

#include "safecast/error.hpp"
#include "safecast/kernels.hpp"
#include "safecast/select.hpp"

namespace safecast {

std::string_view Metric::name() const noexcept {
  switch (kind) {
    case MetricKind::MAE: return "mae";
    case MetricKind::MSE: return "mse";
    case MetricKind::RMSE: return "rmse";
    case MetricKind::MAPE: return "mape";
    case MetricKind::MASE: return "mase";
  }
  return "";
}

Metric parse_metric(std::string_view name, std::size_t mase_seasonality) {
  if (name == "mae") return {MetricKind::MAE};
  if (name == "mse") return {MetricKind::MSE};
  if (name == "rmse") return {MetricKind::RMSE};
  if (name == "mape") return {MetricKind::MAPE};
  if (name == "mase") {
    if (mase_seasonality == 0) raise(ErrorKind::InvalidArgument, "MASE seasonality must be >= 1");
    return {MetricKind::MASE, mase_seasonality};
  }
  raise(ErrorKind::MetricUnknown, "unknown metric '" + std::string(name) + "'");
}

double compute_metric(const Metric& metric, std::span<const double> actual,
                      std::span<const double> predicted, std::span<const double> train) {
  if (actual.size() != predicted.size()) {
    raise(ErrorKind::LengthMismatch, "actual has " + std::to_string(actual.size()) +
                                         " values, predicted " + std::to_string(predicted.size()));
  }
  if (actual.empty()) raise(ErrorKind::LengthMismatch, "metric over zero values");
  const double n = static_cast<double>(actual.size());

  switch (metric.kind) {
    case MetricKind::MAE: return kernels::sum_abs_diff(actual, predicted) / n;
    case MetricKind::MSE: return kernels::sum_sq_diff(actual, predicted) / n;
    case MetricKind::RMSE: return std::sqrt(kernels::sum_sq_diff(actual, predicted) / n);
    case MetricKind::MAPE: {
      double total = 0.0;
      for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) {
          raise(ErrorKind::ZeroDenominator, "MAPE undefined: actual value " + std::to_string(i) + " is 0");
        }
        total += std::fabs((actual[i] - predicted[i]) / actual[i]);
      }
      return total / n;
    }
    case MetricKind::MASE: {
      const std::size_t m = metric.seasonality;
      if (train.size() <= m) {
        raise(ErrorKind::TooShort, "MASE needs a training series longer than m = " + std::to_string(m));
      }
      const double denom = kernels::sum_abs_diff(train.subspan(m), train.first(train.size() - m)) /
                           static_cast<double>(train.size() - m);
      if (denom == 0.0) {
        raise(ErrorKind::ZeroDenominator, "MASE undefined: seasonal-naive error of the training series is 0");
      }
      return (kernels::sum_abs_diff(actual, predicted) / n) / denom;
    }
  }
  raise(ErrorKind::MetricUnknown, "unhandled metric");
}

}  // namespace safecast
