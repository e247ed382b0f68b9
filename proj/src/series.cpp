#include "safecast/series.hpp"

#include <cmath>
#include <unordered_set>

#include "safecast/error.hpp"

namespace safecast {

namespace {

std::optional<std::size_t> grid_position(Timestamp start, Frequency freq, std::size_t n,
                                         Timestamp t) {
  const std::int64_t delta = t.micros() - start.micros();
  if (delta < 0 || delta % freq.step_micros() != 0) return std::nullopt;
  const auto pos = static_cast<std::size_t>(delta / freq.step_micros());
  if (pos >= n) return std::nullopt;
  return pos;
}

}  // namespace

TimeSeries::TimeSeries(std::string name, Timestamp start, Frequency freq,
                       std::vector<double> values)
    : name_(std::move(name)), start_(start), freq_(freq), values_(std::move(values)) {
  if (values_.empty()) raise(ErrorKind::TooShort, "time series '" + name_ + "' is empty");
}

std::optional<std::size_t> TimeSeries::position(Timestamp t) const {
  return grid_position(start_, freq_, values_.size(), t);
}

TimeSeries TimeSeries::slice_rows(std::size_t offset, std::size_t count) const {
  if (count == 0 || offset + count > values_.size()) {
    raise(ErrorKind::CoverageError, "row slice outside series '" + name_ + "'");
  }
  return TimeSeries(name_, timestamp(offset), freq_,
                    std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(offset),
                                        values_.begin() +
                                            static_cast<std::ptrdiff_t>(offset + count)));
}

ExogMatrix::ExogMatrix(Timestamp start, Frequency freq, std::size_t rows,
                       std::vector<ExogColumn> columns)
    : start_(start), freq_(freq), rows_(rows), columns_(std::move(columns)) {
  if (rows_ == 0) raise(ErrorKind::TooShort, "exog matrix has no rows");
  std::unordered_set<std::string> seen;
  for (const ExogColumn& col : columns_) {
    if (!seen.insert(col.name).second) {
      raise(ErrorKind::DuplicateColumn, "duplicate exog column '" + col.name + "'");
    }
    if (col.values.size() != rows_) {
      raise(ErrorKind::DimensionMismatch, "exog column '" + col.name + "' has " +
                                              std::to_string(col.values.size()) +
                                              " rows, expected " + std::to_string(rows_));
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!std::isfinite(col.values[i])) {
        raise(ErrorKind::NonFiniteValue, "exog column '" + col.name + "' row " +
                                             std::to_string(i) + " is not finite");
      }
    }
  }
}

std::vector<std::string> ExogMatrix::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns_.size());
  for (const ExogColumn& col : columns_) names.push_back(col.name);
  return names;
}

ExogMatrix ExogMatrix::slice_rows(std::size_t offset, std::size_t count) const {
  if (count == 0 || offset + count > rows_) {
    raise(ErrorKind::CoverageError, "exog row slice [" + std::to_string(offset) + ", " +
                                        std::to_string(offset + count) + ") outside " +
                                        std::to_string(rows_) + " rows");
  }
  std::vector<ExogColumn> cols;
  cols.reserve(columns_.size());
  for (const ExogColumn& col : columns_) {
    cols.push_back({col.name, std::vector<double>(
                                  col.values.begin() + static_cast<std::ptrdiff_t>(offset),
                                  col.values.begin() + static_cast<std::ptrdiff_t>(offset + count))});
  }
  return ExogMatrix(timestamp(offset), freq_, count, std::move(cols));
}

ExogMatrix ExogMatrix::concat(const ExogMatrix& other) const {
  if (other.start_ != start_ || !(other.freq_ == freq_) || other.rows_ != rows_) {
    raise(ErrorKind::AlignmentError, "cannot concatenate exog matrices on different grids");
  }
  std::vector<ExogColumn> cols = columns_;
  cols.insert(cols.end(), other.columns_.begin(), other.columns_.end());
  return ExogMatrix(start_, freq_, rows_, std::move(cols));
}

ValidationReport validate_series(const TimeSeries& s, MissingPolicy policy) {
  ValidationReport report;
  const auto values = s.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (std::isfinite(v)) continue;
    if (policy == MissingPolicy::Strict) {
      raise(ErrorKind::NonFiniteValue, "series '" + s.name() + "' has non-finite value " +
                                           std::to_string(v) + " at index " + std::to_string(i));
    }
    (std::isnan(v) ? report.missing : report.infinite).push_back(i);
  }
  return report;
}

AlignedView align(const TimeSeries& s, const ExogMatrix& x) {
  if (!(s.freq() == x.freq())) {
    raise(ErrorKind::FrequencyMismatch, "series '" + s.name() + "' and exog differ in frequency");
  }
  const std::int64_t delta = s.start().micros() - x.start().micros();
  if (delta % x.freq().step_micros() != 0) {
    raise(ErrorKind::AlignmentError, "series '" + s.name() + "' is not on the exog grid");
  }
  if (s.start() < x.start() || s.end() > x.end()) {
    raise(ErrorKind::CoverageError, "exog range " + x.start().iso() + " .. " + x.end().iso() +
                                        " does not cover series range " + s.start().iso() +
                                        " .. " + s.end().iso());
  }
  return AlignedView(s, x, static_cast<std::size_t>(delta / x.freq().step_micros()));
}

TimeSeries slice_by_time(const TimeSeries& s, Timestamp from, Timestamp to) {
  if (to < from) raise(ErrorKind::InvalidArgument, "slice end precedes slice start");
  const std::int64_t step = s.freq().step_micros();
  for (Timestamp t : {from, to}) {
    if ((t.micros() - s.start().micros()) % step != 0) {
      raise(ErrorKind::OffGridTimestamp, t.iso() + " is not on the grid of '" + s.name() + "'");
    }
  }
  const auto first = s.position(from);
  const auto last = s.position(to);
  if (!first || !last) {
    raise(ErrorKind::CoverageError, "slice " + from.iso() + " .. " + to.iso() +
                                        " outside series '" + s.name() + "'");
  }
  return s.slice_rows(*first, *last - *first + 1);
}

}  // namespace safecast
