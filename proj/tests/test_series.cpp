#include <cmath>
#include <limits>

#include "safecast/csv.hpp"
#include "safecast/series.hpp"
#include "support.hpp"

using namespace safecast;
using testing::hourly;

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

TimeSeries q1_hourly() { return hourly(std::vector<double>(2160, 1.0)); }
}  // namespace

TEST_CASE("timestamp parsing and formatting") {
  const Timestamp t = Timestamp::parse("2025-03-01T23:00:00Z");
  CHECK(t == Timestamp::from_civil(2025, 3, 1, 23));
  CHECK(Timestamp::parse("2025-03-01 23:00") == t);
  CHECK(Timestamp::parse("2025-03-01T23:00:00.000000+00:00") == t);
  CHECK(Timestamp::parse("2025-03-01") == Timestamp::from_civil(2025, 3, 1));
  CHECK(t.iso() == "2025-03-01T23:00:00.000000Z");
  CHECK(Timestamp::from_civil(2026, 4, 26, 16, 31, 44).compact() == "20260426_163144");
  CHECK(Timestamp::from_civil(2025, 1, 1).day_of_week() == 2);  // Wednesday
  CHECK(Timestamp::from_civil(2025, 3, 1).day_of_year() == 60);
  CHECK(Timestamp::parse("2025-01-01T00:00:00.5Z").micros() % 1'000'000 == 500'000);
  CHECK(Timestamp::from_civil(1969, 12, 31, 23).day_number() == -1);

  CHECK_RAISES(Timestamp::parse("2025-03-01T23:00:00+01:00"), ErrorKind::ParseError);
  CHECK_RAISES(Timestamp::parse("2025-02-30"), ErrorKind::ParseError);
  CHECK_RAISES(Timestamp::parse("2025-03-01T24:00"), ErrorKind::ParseError);
  CHECK_FALSE(Timestamp::try_parse("yesterday").has_value());
  CHECK_RAISES(Frequency(0), ErrorKind::InvalidArgument);
}

TEST_CASE("iso round trip over many instants") {
  std::int64_t micros = -10'000'000'000'000LL;
  for (int i = 0; i < 500; ++i) {
    const Timestamp t(micros);
    CHECK(Timestamp::parse(t.iso()) == t);
    micros += 1'234'567'891'237LL;
  }
}

TEST_CASE("validate_series") {
  CHECK(validate_series(hourly({1.0, 2.0, 3.0}), MissingPolicy::Strict).clean());
  CHECK_RAISES(validate_series(hourly({1.0, kNaN, 3.0}), MissingPolicy::Strict),
               ErrorKind::NonFiniteValue);
  try {
    validate_series(hourly({1.0, kNaN, 3.0}), MissingPolicy::Strict);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
  const ValidationReport r = validate_series(hourly({1.0, kNaN, kInf}), MissingPolicy::Tolerant);
  CHECK(r.missing == std::vector<std::size_t>{1});
  CHECK(r.infinite == std::vector<std::size_t>{2});
}

TEST_CASE("series construction") {
  CHECK_RAISES(hourly({}), ErrorKind::TooShort);
  const TimeSeries s = hourly({1, 2, 3, 4});
  CHECK(s.end() == Timestamp::from_civil(2025, 1, 1, 3));
  CHECK(s.position(Timestamp::from_civil(2025, 1, 1, 2)) == 2u);
  CHECK_FALSE(s.position(Timestamp::from_civil(2025, 1, 1, 2, 30)).has_value());
  CHECK_FALSE(s.position(Timestamp::from_civil(2025, 1, 1, 4)).has_value());
  const TimeSeries tail = s.slice_rows(2, 2);
  CHECK(tail.start() == Timestamp::from_civil(2025, 1, 1, 2));
  CHECK(tail[1] == 4.0);
}

TEST_CASE("exog matrix invariants") {
  const Timestamp t0 = Timestamp::from_civil(2025, 1, 1);
  const Frequency h = Frequency::hours(1);
  CHECK_RAISES(ExogMatrix(t0, h, 2, {{"a", {1, 2}}, {"a", {3, 4}}}), ErrorKind::DuplicateColumn);
  CHECK_RAISES(ExogMatrix(t0, h, 2, {{"a", {1}}}), ErrorKind::DimensionMismatch);
  CHECK_RAISES(ExogMatrix(t0, h, 2, {{"a", {1, kNaN}}}), ErrorKind::NonFiniteValue);
  const ExogMatrix x(t0, h, 3, {{"a", {1, 2, 3}}});
  const ExogMatrix y(t0, h, 3, {{"b", {4, 5, 6}}});
  const ExogMatrix xy = x.concat(y);
  CHECK(xy.column_names() == std::vector<std::string>{"a", "b"});
  CHECK(xy.at(2, 1) == 6.0);
  CHECK_RAISES(x.concat(x), ErrorKind::DuplicateColumn);
  CHECK(xy.slice_rows(1, 2).at(0, 0) == 2.0);
}

TEST_CASE("align") {
  const Timestamp jan1 = Timestamp::from_civil(2025, 1, 1);
  const TimeSeries s = hourly(std::vector<double>(48, 0.0));
  const ExogMatrix x(jan1, Frequency::hours(1), 31 * 24, {{"c", std::vector<double>(31 * 24, 0.0)}});
  const AlignedView v = align(s, x);
  CHECK(v.rows() == 48);
  CHECK(v.offset() == 0);

  const ExogMatrix daily(jan1, Frequency::days(1), 31, {{"c", std::vector<double>(31, 0.0)}});
  CHECK_RAISES(align(s, daily), ErrorKind::FrequencyMismatch);

  const TimeSeries march = hourly(std::vector<double>(31 * 24, 0.0), Timestamp::from_civil(2025, 3, 1));
  const ExogMatrix short_x(Timestamp::from_civil(2025, 3, 1), Frequency::hours(1), 30 * 24,
                           {{"c", std::vector<double>(30 * 24, 0.0)}});
  CHECK_RAISES(align(march, short_x), ErrorKind::CoverageError);

  const ExogMatrix off(Timestamp::from_civil(2024, 12, 31, 23, 30), Frequency::hours(1), 100,
                       {{"c", std::vector<double>(100, 0.0)}});
  CHECK_RAISES(align(s, off), ErrorKind::AlignmentError);

  const TimeSeries later = hourly(std::vector<double>(5, 0.0), Timestamp::from_civil(2025, 1, 2));
  CHECK(align(later, x).offset() == 24);
}

TEST_CASE("slice_by_time reproduces the chronological split") {
  const TimeSeries s = q1_hourly();
  const TimeSeries train = slice_by_time(s, Timestamp::from_civil(2025, 1, 1), Timestamp::from_civil(2025, 3, 1, 23));
  const TimeSeries eval = slice_by_time(s, Timestamp::from_civil(2025, 3, 2), Timestamp::from_civil(2025, 3, 31, 23));
  CHECK(train.size() == 1440);
  CHECK(eval.size() == 720);
  const Timestamp mid = Timestamp::from_civil(2025, 2, 1, 5);
  CHECK(slice_by_time(s, mid, mid).size() == 1);
  CHECK_RAISES(slice_by_time(s, mid, Timestamp::from_civil(2025, 2, 1)), ErrorKind::InvalidArgument);
  CHECK_RAISES(slice_by_time(s, mid, Timestamp::from_civil(2025, 4, 1)), ErrorKind::CoverageError);
  CHECK_RAISES(slice_by_time(s, Timestamp::from_civil(2025, 2, 1, 5, 1), Timestamp::from_civil(2025, 2, 2)),
               ErrorKind::OffGridTimestamp);
}

TEST_CASE("csv parsing") {
  const CsvTable t = parse_csv(
      "timestamp,load\n2025-01-01T00:00:00Z,1.5\n2025-01-01T01:00:00Z,\n2025-01-01T02:00:00Z,3\n");
  CHECK(t.freq == Frequency::hours(1));
  CHECK(t.names == std::vector<std::string>{"load"});
  const TimeSeries s = t.series("load");
  CHECK(s.size() == 3);
  CHECK(std::isnan(s[1]));
  CHECK(s[2] == 3.0);

  CHECK_RAISES(parse_csv("time,load\n2025-01-01,1\n2025-01-02,2\n"), ErrorKind::ParseError);
  CHECK_RAISES(parse_csv("timestamp,load\n2025-01-01T00:00Z,1\n2025-01-01T00:00Z,2\n"), ErrorKind::ParseError);
  CHECK_RAISES(parse_csv("timestamp,load\n2025-01-01T00:00Z,1\n2025-01-01T01:00Z,2\n2025-01-01T01:30Z,2\n"),
               ErrorKind::ParseError);
  CHECK_RAISES(parse_csv("timestamp,load\n2025-01-01T00:00Z,abc\n2025-01-01T01:00Z,2\n"), ErrorKind::ParseError);
  CHECK_RAISES(parse_csv("timestamp,load\n2025-01-01T00:00Z,1\n"), ErrorKind::ParseError);
  CHECK(parse_csv("timestamp,load\n2025-01-01T00:00Z,1\n", Frequency::hours(1)).rows() == 1);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e300, 47.0, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
