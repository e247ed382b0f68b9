#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace safecast {

/// UTC instant with microsecond resolution, stored as microseconds since the
/// Unix epoch. There is no local-time representation.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::int64_t micros) : micros_(micros) {}

  static Timestamp from_civil(int year, unsigned month, unsigned day, unsigned hour = 0,
                              unsigned minute = 0, unsigned second = 0,
                              unsigned microsecond = 0);

  /// Accepts "YYYY-MM-DD", "YYYY-MM-DD[T ]HH:MM[:SS[.ffffff]]" with an optional
  /// "Z" or "+00:00" suffix. Any other offset is a ParseError.
  static Timestamp parse(std::string_view text);
  /// As parse(), but returns nullopt instead of raising (and logs nothing).
  static std::optional<Timestamp> try_parse(std::string_view text) noexcept;

  constexpr std::int64_t micros() const noexcept { return micros_; }
  std::int64_t epoch_seconds() const noexcept;

  /// "YYYY-MM-DDTHH:MM:SS.ffffffZ"
  std::string iso() const;
  /// "YYYYMMDD_HHMMSS"
  std::string compact() const;
  /// "YYYY-MM-DD"
  std::string date() const;

  int hour() const noexcept;
  /// Monday = 0 ... Sunday = 6.
  int day_of_week() const noexcept;
  /// 1-based day of the year.
  int day_of_year() const noexcept;
  /// Days since 1970-01-01 of the instant's UTC date.
  std::int64_t day_number() const noexcept;

  constexpr auto operator<=>(const Timestamp&) const = default;

 private:
  std::int64_t micros_ = 0;
};

/// Fixed sampling step.
class Frequency {
 public:
  explicit Frequency(std::int64_t step_micros);

  static Frequency hours(std::int64_t n) { return Frequency(n * 3'600'000'000LL); }
  static Frequency minutes(std::int64_t n) { return Frequency(n * 60'000'000LL); }
  static Frequency days(std::int64_t n) { return Frequency(n * 86'400'000'000LL); }

  std::int64_t step_micros() const noexcept { return step_; }

  bool operator==(const Frequency&) const = default;

 private:
  std::int64_t step_;
};

inline Timestamp advance(Timestamp t, Frequency f, std::int64_t steps) {
  return Timestamp(t.micros() + steps * f.step_micros());
}

/// Parses "YYYY-MM-DD" into a day number (days since 1970-01-01).
std::int64_t parse_date(std::string_view text);

}  // namespace safecast
