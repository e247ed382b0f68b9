#pragma once

// Structured JSON-lines audit log, schema version 1.0.0.
//
// Each record is one line holding schema_version, timestamp_utc, logger,
// level, event and message (always, in that order), followed by whichever of
// task, context and exception are set. The file handler records INFO and
// above; a separate console stream gets a plain-text rendering filtered by
// its own threshold.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "safecast/error.hpp"
#include "safecast/time.hpp"

namespace safecast::audit {

inline constexpr std::string_view kSchemaVersion = "1.0.0";

enum class Level { Debug = 10, Info = 20, Warning = 30, Error = 40, Critical = 50 };

std::string_view level_name(Level level) noexcept;
std::optional<Level> parse_level(std::string_view name) noexcept;

using ContextValue = std::variant<std::string, std::int64_t, double, bool>;
using Context = std::vector<std::pair<std::string, ContextValue>>;

struct AuditRecord {
  Timestamp timestamp_utc;
  std::string logger;
  Level level = Level::Info;
  std::string event;
  std::string message;
  std::optional<std::string> task;
  Context context;  // empty: field omitted
  std::optional<std::string> exception;
};

/// One JSON object, no trailing newline. Throws InvalidArgument if a mandatory
/// field is empty.
std::string to_json_line(const AuditRecord& record);

/// Source of "now". Inject a fixed clock to make logs reproducible.
using Clock = std::function<Timestamp()>;
Clock system_clock();
Clock fixed_clock(Timestamp t);

/// One log file per run, `<task>_<YYYYMMDD_HHMMSS>.log` under `log_dir`.
/// Single writer; not thread-safe.
class AuditSink {
 public:
  static constexpr Level kFileLevel = Level::Info;

  AuditSink(std::string task, const std::filesystem::path& log_dir, Level console_level,
            Clock clock = system_clock(), std::ostream* console = nullptr);

  AuditSink(const AuditSink&) = delete;
  AuditSink& operator=(const AuditSink&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  const std::string& task() const noexcept { return task_; }
  Timestamp now() const { return clock_(); }

  /// Writes to the console (if at or above its threshold) and to the file (if
  /// at or above INFO). The file is flushed before returning.
  void emit(const AuditRecord& record);

  /// Builds a record stamped with the sink's clock, logger and task.
  void log(Level level, std::string event, std::string message, Context context = {},
           std::optional<std::string> exception = std::nullopt);

 private:
  std::string task_;
  Level console_level_;
  Clock clock_;
  std::ostream* console_;
  std::filesystem::path path_;
  std::ofstream file_;
};

/// While alive, every error raised through safecast::raise on this thread is
/// recorded on `sink` as an ERROR record with the error text as `exception`.
class ScopedErrorAudit : public ErrorObserver {
 public:
  explicit ScopedErrorAudit(AuditSink& sink);
  ~ScopedErrorAudit() override;

  ScopedErrorAudit(const ScopedErrorAudit&) = delete;
  ScopedErrorAudit& operator=(const ScopedErrorAudit&) = delete;

  void on_error(const Error& error) noexcept override;

 private:
  AuditSink& sink_;
  ErrorObserver* previous_;
};

/// Event slug for an error kind, e.g. NonFiniteValue -> "non_finite_value".
std::string error_event(ErrorKind kind);

struct LogViolation {
  std::size_t line;
  std::string reason;

  bool operator==(const LogViolation&) const = default;
};

struct LogReport {
  std::size_t records = 0;
  std::vector<LogViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks every line against the schema and that timestamps never decrease.
/// Throws IoError if the file cannot be read.
LogReport validate_log(const std::filesystem::path& path);
LogReport validate_log_text(std::string_view text);

}  // namespace safecast::audit
