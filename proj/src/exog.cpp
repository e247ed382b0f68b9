#include <cmath>
#include <unordered_set>

#include "safecast/error.hpp"
#include "safecast/preprocess.hpp"

namespace safecast {

Period::Period(std::string name_, int n_periods_, CalendarField column_, int lo_, int hi_)
    : name(std::move(name_)), n_periods(n_periods_), column(column_), lo(lo_), hi(hi_) {
  if (n_periods < 1) raise(ErrorKind::InvalidArgument, "period '" + name + "' needs n_periods >= 1");
  if (lo >= hi) raise(ErrorKind::InvalidArgument, "period '" + name + "' needs lo < hi");
}

std::size_t IndexRange::rows() const {
  if (end < start) raise(ErrorKind::InvalidArgument, "index range end precedes start");
  const std::int64_t delta = end.micros() - start.micros();
  if (delta % freq.step_micros() != 0) {
    raise(ErrorKind::OffGridTimestamp, "index range end " + end.iso() + " is not on the grid");
  }
  return static_cast<std::size_t>(delta / freq.step_micros()) + 1;
}

int calendar_value(Timestamp t, CalendarField field) noexcept {
  switch (field) {
    case CalendarField::Hour: return t.hour();
    case CalendarField::DayOfWeek: return t.day_of_week();
    case CalendarField::DayOfYear: return t.day_of_year();
  }
  return 0;
}

ExogMatrix rbf_encode(const IndexRange& range, const Period& period) {
  const std::size_t rows = range.rows();
  const int n = period.n_periods;
  const double width = 1.0 / n;
  const double cycle = static_cast<double>(period.hi - period.lo + 1);

  std::vector<ExogColumn> cols(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    cols[static_cast<std::size_t>(j)].name = period.name + "_" + std::to_string(j);
    cols[static_cast<std::size_t>(j)].values.resize(rows);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const Timestamp t = advance(range.start, range.freq, static_cast<std::int64_t>(r));
    const double u = (calendar_value(t, period.column) - period.lo) / cycle;
    for (int j = 0; j < n; ++j) {
      const double center = static_cast<double>(j) / n;
      const double raw = std::fabs(u - center);
      const double dist = std::min(raw, 1.0 - raw);
      const double z = dist / width;
      cols[static_cast<std::size_t>(j)].values[r] = std::exp(-(z * z));
    }
  }
  return ExogMatrix(range.start, range.freq, rows, std::move(cols));
}

ExogMatrix build_exog(const IndexRange& range, std::span<const Period> periods,
                      const std::set<std::int64_t>& holidays, const std::set<int>& weekend_days) {
  const std::size_t rows = range.rows();
  std::vector<ExogColumn> cols;
  std::unordered_set<std::string> names;
  auto add = [&](ExogColumn col) {
    if (!names.insert(col.name).second) {
      raise(ErrorKind::DuplicateColumn, "exog column '" + col.name + "' defined twice");
    }
    cols.push_back(std::move(col));
  };

  for (const Period& p : periods) {
    ExogMatrix block = rbf_encode(range, p);
    for (const ExogColumn& col : block.columns()) add(col);
  }
  ExogColumn holiday{"holidays", std::vector<double>(rows, 0.0)};
  ExogColumn weekend{"is_weekend", std::vector<double>(rows, 0.0)};
  for (std::size_t r = 0; r < rows; ++r) {
    const Timestamp t = advance(range.start, range.freq, static_cast<std::int64_t>(r));
    if (holidays.contains(t.day_number())) holiday.values[r] = 1.0;
    if (weekend_days.contains(t.day_of_week())) weekend.values[r] = 1.0;
  }
  add(std::move(holiday));
  add(std::move(weekend));
  return ExogMatrix(range.start, range.freq, rows, std::move(cols));
}

}  // namespace safecast
