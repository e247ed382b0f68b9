#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace safecast {

enum class ErrorKind {
  InvalidArgument,
  NonFiniteValue,
  CoverageError,
  FrequencyMismatch,
  AlignmentError,
  OffGridTimestamp,
  ResidualMissing,
  AllMissing,
  DuplicateColumn,
  TooShort,
  StateMismatch,
  DimensionMismatch,
  SingularSystem,
  ExogMissing,
  ExogShape,
  NoResiduals,
  MetricUnknown,
  LengthMismatch,
  ZeroDenominator,
  IoError,
  ParseError,
  HashMismatch,
  UnsupportedVersion,
  InvalidComponent,
  ConfigError,
};

/// Stable CamelCase name of an error kind, e.g. "NonFiniteValue".
std::string_view error_name(ErrorKind kind) noexcept;

/// Every contract violation in the library is reported as an Error.
/// what() is "<Name>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Receives every error raised through raise() on the current thread before
/// it is thrown. The audit module installs one to log risk events.
class ErrorObserver {
 public:
  virtual ~ErrorObserver() = default;
  virtual void on_error(const Error& error) noexcept = 0;
};

/// Installs `observer` for the current thread; returns the previous one.
ErrorObserver* exchange_error_observer(ErrorObserver* observer) noexcept;

[[noreturn]] void raise(ErrorKind kind, const std::string& detail);

}  // namespace safecast
