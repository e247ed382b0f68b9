#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "safecast/series.hpp"

namespace safecast {

/// Table read from a CSV file: first column `timestamp` (ISO 8601 UTC),
/// remaining columns numeric with `.` as decimal point. Empty cells are NaN.
struct CsvTable {
  Timestamp start;
  Frequency freq{1};
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::string raw;  // file bytes as read, for provenance hashing

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  TimeSeries series(const std::string& name) const;
};

/// Parses CSV text. The grid step is inferred from the first two rows unless
/// `freq` is given; a single-row table requires `freq`. Off-grid or duplicate
/// timestamps are ParseErrors.
CsvTable parse_csv(std::string text, std::optional<Frequency> freq = std::nullopt);
CsvTable load_csv(const std::filesystem::path& path,
                  std::optional<Frequency> freq = std::nullopt);

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double v);

}  // namespace safecast
