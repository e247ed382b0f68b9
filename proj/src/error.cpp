#include "safecast/error.hpp"

namespace safecast {

namespace {
thread_local ErrorObserver* current_observer = nullptr;
}

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::CoverageError: return "CoverageError";
    case ErrorKind::FrequencyMismatch: return "FrequencyMismatch";
    case ErrorKind::AlignmentError: return "AlignmentError";
    case ErrorKind::OffGridTimestamp: return "OffGridTimestamp";
    case ErrorKind::ResidualMissing: return "ResidualMissing";
    case ErrorKind::AllMissing: return "AllMissing";
    case ErrorKind::DuplicateColumn: return "DuplicateColumn";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::StateMismatch: return "StateMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::ExogMissing: return "ExogMissing";
    case ErrorKind::ExogShape: return "ExogShape";
    case ErrorKind::NoResiduals: return "NoResiduals";
    case ErrorKind::MetricUnknown: return "MetricUnknown";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::HashMismatch: return "HashMismatch";
    case ErrorKind::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorKind::InvalidComponent: return "InvalidComponent";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

ErrorObserver* exchange_error_observer(ErrorObserver* observer) noexcept {
  ErrorObserver* previous = current_observer;
  current_observer = observer;
  return previous;
}

void raise(ErrorKind kind, const std::string& detail) {
  Error error(kind, detail);
  if (current_observer != nullptr) current_observer->on_error(error);
  throw error;
}

}  // namespace safecast
