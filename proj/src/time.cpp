#include "safecast/time.hpp"

#include <chrono>
#include <cstdio>

#include "safecast/error.hpp"

namespace safecast {

namespace {

using namespace std::chrono;

constexpr std::int64_t kMicrosPerDay = 86'400'000'000LL;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  const year_month_day ymd{year{y}, month{m}, day{d}};
  if (!ymd.ok()) {
    raise(ErrorKind::ParseError, "invalid calendar date " + std::to_string(y) + "-" +
                                     std::to_string(m) + "-" + std::to_string(d));
  }
  return sys_days{ymd}.time_since_epoch().count();
}

year_month_day civil(std::int64_t day_number) {
  return year_month_day{sys_days{days{day_number}}};
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  unsigned digits(std::size_t count) {
    unsigned value = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const char c = peek();
      if (c < '0' || c > '9') fail();
      value = value * 10 + static_cast<unsigned>(c - '0');
      ++pos_;
    }
    return value;
  }

  void expect(char c) {
    if (peek() != c) fail();
    ++pos_;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::string_view rest() const { return text_.substr(pos_); }

  [[noreturn]] void fail() const {
    raise(ErrorKind::ParseError, "malformed UTC timestamp '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Timestamp Timestamp::from_civil(int year, unsigned month, unsigned day, unsigned hour,
                                unsigned minute, unsigned second, unsigned microsecond) {
  if (hour > 23 || minute > 59 || second > 59 || microsecond > 999'999) {
    raise(ErrorKind::ParseError, "time of day out of range");
  }
  const std::int64_t d = days_from_civil(year, month, day);
  return Timestamp(d * kMicrosPerDay +
                   ((hour * 60LL + minute) * 60LL + second) * 1'000'000LL + microsecond);
}

Timestamp Timestamp::parse(std::string_view text) {
  Cursor c(text);
  const int y = static_cast<int>(c.digits(4));
  c.expect('-');
  const unsigned mo = c.digits(2);
  c.expect('-');
  const unsigned d = c.digits(2);
  unsigned h = 0, mi = 0, s = 0, us = 0;
  if (c.accept('T') || c.accept(' ')) {
    h = c.digits(2);
    c.expect(':');
    mi = c.digits(2);
    if (c.accept(':')) {
      s = c.digits(2);
      if (c.accept('.')) {
        unsigned scale = 100'000;
        std::size_t n = 0;
        while (c.peek() >= '0' && c.peek() <= '9') {
          if (n == 6) c.fail();
          us += c.digits(1) * scale;
          scale /= 10;
          ++n;
        }
        if (n == 0) c.fail();
      }
    }
  }
  if (!c.done()) {
    const std::string_view suffix = c.rest();
    if (suffix != "Z" && suffix != "+00:00") c.fail();
  }
  return from_civil(y, mo, d, h, mi, s, us);
}

std::optional<Timestamp> Timestamp::try_parse(std::string_view text) noexcept {
  ErrorObserver* observer = exchange_error_observer(nullptr);
  std::optional<Timestamp> out;
  try {
    out = parse(text);
  } catch (...) {
  }
  exchange_error_observer(observer);
  return out;
}

std::int64_t Timestamp::epoch_seconds() const noexcept { return floor_div(micros_, 1'000'000); }

std::int64_t Timestamp::day_number() const noexcept { return floor_div(micros_, kMicrosPerDay); }

std::string Timestamp::iso() const {
  const std::int64_t dn = day_number();
  const std::int64_t within = micros_ - dn * kMicrosPerDay;
  const year_month_day ymd = civil(dn);
  const std::int64_t secs = within / 1'000'000;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lld.%06lldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<long long>(secs / 3600),
                static_cast<long long>((secs / 60) % 60), static_cast<long long>(secs % 60),
                static_cast<long long>(within % 1'000'000));
  return buf;
}

std::string Timestamp::compact() const {
  const std::string s = iso();
  // YYYY-MM-DDTHH:MM:SS -> YYYYMMDD_HHMMSS
  return s.substr(0, 4) + s.substr(5, 2) + s.substr(8, 2) + "_" + s.substr(11, 2) +
         s.substr(14, 2) + s.substr(17, 2);
}

std::string Timestamp::date() const { return iso().substr(0, 10); }

int Timestamp::hour() const noexcept {
  return static_cast<int>((micros_ - day_number() * kMicrosPerDay) / 3'600'000'000LL);
}

int Timestamp::day_of_week() const noexcept {
  // 1970-01-01 was a Thursday (Monday-based index 3).
  return static_cast<int>(((day_number() + 3) % 7 + 7) % 7);
}

int Timestamp::day_of_year() const noexcept {
  const std::int64_t dn = day_number();
  const year_month_day ymd = civil(dn);
  const std::int64_t jan1 = sys_days{ymd.year() / January / 1}.time_since_epoch().count();
  return static_cast<int>(dn - jan1 + 1);
}

Frequency::Frequency(std::int64_t step_micros) : step_(step_micros) {
  if (step_micros <= 0) raise(ErrorKind::InvalidArgument, "frequency step must be positive");
}

std::int64_t parse_date(std::string_view text) {
  if (text.size() != 10) {
    raise(ErrorKind::ParseError, "expected YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  return Timestamp::parse(text).day_number();
}

}  // namespace safecast
