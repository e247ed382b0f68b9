#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "safecast/time.hpp"

namespace safecast {

/// Regular, UTC-indexed univariate series. The index is implicit:
/// timestamp(i) = start + i * step, so only missing values (NaN) can exist,
/// never gaps.
class TimeSeries {
 public:
  TimeSeries(std::string name, Timestamp start, Frequency freq, std::vector<double> values);

  const std::string& name() const noexcept { return name_; }
  Timestamp start() const noexcept { return start_; }
  Frequency freq() const noexcept { return freq_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  Timestamp timestamp(std::size_t i) const {
    return advance(start_, freq_, static_cast<std::int64_t>(i));
  }
  Timestamp end() const { return timestamp(values_.size() - 1); }

  /// Position of `t` on the grid, if it is on-grid and inside the range.
  std::optional<std::size_t> position(Timestamp t) const;

  /// Rows [offset, offset + count) as a new series.
  TimeSeries slice_rows(std::size_t offset, std::size_t count) const;

  bool operator==(const TimeSeries&) const = default;

 private:
  std::string name_;
  Timestamp start_;
  Frequency freq_;
  std::vector<double> values_;
};

struct ExogColumn {
  std::string name;
  std::vector<double> values;

  bool operator==(const ExogColumn&) const = default;
};

/// Column-named feature matrix on a regular UTC grid. Column order is part of
/// the identity. All values are finite.
class ExogMatrix {
 public:
  ExogMatrix(Timestamp start, Frequency freq, std::size_t rows, std::vector<ExogColumn> columns);

  Timestamp start() const noexcept { return start_; }
  Frequency freq() const noexcept { return freq_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  const std::vector<ExogColumn>& columns() const noexcept { return columns_; }
  std::vector<std::string> column_names() const;
  double at(std::size_t row, std::size_t col) const { return columns_[col].values[row]; }
  Timestamp timestamp(std::size_t i) const {
    return advance(start_, freq_, static_cast<std::int64_t>(i));
  }
  Timestamp end() const { return timestamp(rows_ - 1); }

  ExogMatrix slice_rows(std::size_t offset, std::size_t count) const;
  /// Horizontal concatenation; `other` must share start, freq and row count.
  ExogMatrix concat(const ExogMatrix& other) const;

  bool operator==(const ExogMatrix&) const = default;

 private:
  Timestamp start_;
  Frequency freq_;
  std::size_t rows_;
  std::vector<ExogColumn> columns_;
};

enum class MissingPolicy { Strict, Tolerant };

struct ValidationReport {
  std::vector<std::size_t> missing;   // NaN positions
  std::vector<std::size_t> infinite;  // +-Inf positions

  std::size_t invalid_count() const noexcept { return missing.size() + infinite.size(); }
  bool clean() const noexcept { return invalid_count() == 0; }
};

/// Strict: raises NonFiniteValue at the first NaN/Inf. Tolerant: enumerates them.
ValidationReport validate_series(const TimeSeries& s, MissingPolicy policy);

/// Row-aligned view of a series onto an exog matrix: series row i maps to
/// exog row offset + i.
class AlignedView {
 public:
  AlignedView(const TimeSeries& series, const ExogMatrix& exog, std::size_t offset)
      : series_(&series), exog_(&exog), offset_(offset) {}

  std::size_t rows() const noexcept { return series_->size(); }
  std::size_t offset() const noexcept { return offset_; }
  double target(std::size_t i) const { return (*series_)[i]; }
  double exog(std::size_t i, std::size_t col) const { return exog_->at(offset_ + i, col); }
  const ExogMatrix& matrix() const noexcept { return *exog_; }

 private:
  const TimeSeries* series_;
  const ExogMatrix* exog_;
  std::size_t offset_;
};

AlignedView align(const TimeSeries& s, const ExogMatrix& x);

/// Inclusive on both ends.
TimeSeries slice_by_time(const TimeSeries& s, Timestamp from, Timestamp to);

}  // namespace safecast
