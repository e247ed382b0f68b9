#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "safecast/forecast.hpp"
#include "safecast/preprocess.hpp"
#include "safecast/select.hpp"

namespace safecast::cli {

struct SyntheticSource {
  std::size_t n = 2160;
  Timestamp start = Timestamp::from_civil(2025, 1, 1);
  std::uint64_t seed = 2026;
  double noise_sd = 0.5;
};

/// Parameters of one pipeline run, read from a single JSON document.
struct RunConfig {
  std::optional<std::filesystem::path> input;  // absent: synthetic data
  SyntheticSource synthetic;
  LagSet lags = LagSet::range(1, 168);
  std::vector<Period> periods;
  std::set<std::int64_t> holidays;  // day numbers
  std::set<int> weekend_days{5, 6};
  RegressorSpec regressor;
  std::size_t horizon = 24;
  double coverage = 0.9;
  std::size_t n_boot = 500;
  MissingMode missing = MissingMode::Raise;
  std::optional<Timestamp> train_end;  // demo split; null: hold out the last `horizon` points
  FoldPlan plan;
  std::vector<std::string> metrics{"mae", "mse", "rmse", "mape", "mase"};
  std::size_t mase_seasonality = 1;
  std::uint64_t seed = 123456789;
  std::filesystem::path log_dir = "logs";
  std::filesystem::path output_dir = "output";

  std::vector<Metric> parsed_metrics() const;
};

/// The configuration of the worked load-forecasting example.
RunConfig default_config();

/// Starts from default_config() and applies every key of `json_text`.
/// Unknown keys and ill-typed values raise ConfigError.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace safecast::cli
