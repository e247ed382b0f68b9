#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "config.hpp"
#include "safecast/audit.hpp"

namespace safecast::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitContract = 1;
inline constexpr int kExitUsage = 2;

struct CommonOptions {
  std::optional<std::filesystem::path> config;  // absent: default_config()
  std::optional<Timestamp> clock;               // fixed clock for reproducible runs
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::filesystem::path> log_dir;
  audit::Level console_level = audit::Level::Warning;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

/// End-to-end worked example: data, gap filling, split, calendar features,
/// fit, interval forecast, accuracy, backtest, provenance. Writes
/// model.json, forecast.csv and metrics.csv to the output directory.
int cmd_demo(const CommonOptions& opts, Streams io);

/// Fits on the whole input series and writes the model file.
int cmd_fit(const CommonOptions& opts, const std::filesystem::path& model_path, Streams io);

/// Loads a model and writes `timestamp,point,lower,upper` for the configured horizon.
int cmd_predict(const CommonOptions& opts, const std::filesystem::path& model_path,
                const std::filesystem::path& output, Streams io);

/// Rolling-origin backtest; writes `fold,<metric>...`.
int cmd_backtest(const CommonOptions& opts, const std::filesystem::path& output, Streams io);

/// Exit 0 on a clean log, 1 with one `line:<n> <reason>` per violation.
int cmd_validate_log(const std::filesystem::path& path, Streams io);

int cmd_cpe(const std::string& vendor, const std::string& product, const std::string& version,
            const std::string& target_sw, Streams io);

}  // namespace safecast::cli
