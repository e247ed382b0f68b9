#include "safecast/audit.hpp"

#include <chrono>
#include <iostream>

#include "json.hpp"

namespace safecast::audit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string console_time(Timestamp t) {
  // "YYYY-MM-DD HH:MM:SS,mmm"
  const std::string iso = t.iso();
  return iso.substr(0, 10) + " " + iso.substr(11, 8) + "," + iso.substr(20, 3);
}

}  // namespace

std::string_view level_name(Level level) noexcept {
  switch (level) {
    case Level::Debug: return "DEBUG";
    case Level::Info: return "INFO";
    case Level::Warning: return "WARNING";
    case Level::Error: return "ERROR";
    case Level::Critical: return "CRITICAL";
  }
  return "";
}

std::optional<Level> parse_level(std::string_view name) noexcept {
  for (Level l : {Level::Debug, Level::Info, Level::Warning, Level::Error, Level::Critical}) {
    if (level_name(l) == name) return l;
  }
  return std::nullopt;
}

std::string to_json_line(const AuditRecord& record) {
  for (const auto& [field, value] : {std::pair<const char*, const std::string*>{"logger", &record.logger},
                                     {"event", &record.event},
                                     {"message", &record.message}}) {
    if (value->empty()) {
      raise(ErrorKind::InvalidArgument, std::string("audit record field '") + field + "' is empty");
    }
  }
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["timestamp_utc"] = record.timestamp_utc.iso();
  j["logger"] = record.logger;
  j["level"] = level_name(record.level);
  j["event"] = record.event;
  j["message"] = record.message;
  if (record.task) j["task"] = *record.task;
  if (!record.context.empty()) {
    ordered_json ctx = ordered_json::object();
    for (const auto& [key, value] : record.context) {
      std::visit([&](const auto& v) { ctx[key] = v; }, value);
    }
    j["context"] = std::move(ctx);
  }
  if (record.exception) j["exception"] = *record.exception;
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

Clock system_clock() {
  return [] {
    const auto now = std::chrono::system_clock::now();
    return Timestamp(
        std::chrono::duration_cast<std::chrono::microseconds>(now.time_since_epoch()).count());
  };
}

Clock fixed_clock(Timestamp t) {
  return [t] { return t; };
}

AuditSink::AuditSink(std::string task, const std::filesystem::path& log_dir, Level console_level,
                     Clock clock, std::ostream* console)
    : task_(std::move(task)),
      console_level_(console_level),
      clock_(std::move(clock)),
      console_(console != nullptr ? console : &std::cerr) {
  if (task_.empty()) raise(ErrorKind::InvalidArgument, "audit task name is empty");
  std::error_code ec;
  std::filesystem::create_directories(log_dir, ec);
  if (ec) raise(ErrorKind::IoError, "cannot create log directory " + log_dir.string() + ": " + ec.message());
  path_ = log_dir / (task_ + "_" + clock_().compact() + ".log");
  file_.open(path_, std::ios::out | std::ios::app | std::ios::binary);
  if (!file_) raise(ErrorKind::IoError, "cannot open audit log " + path_.string());
}

void AuditSink::emit(const AuditRecord& record) {
  const std::string line = to_json_line(record);
  if (record.level >= console_level_) {
    *console_ << console_time(record.timestamp_utc) << " - " << record.task.value_or(task_) << " - "
              << level_name(record.level) << " - " << record.message << '\n';
  }
  if (record.level >= kFileLevel) {
    file_ << line << '\n';
    file_.flush();
    if (!file_) raise(ErrorKind::IoError, "write to audit log " + path_.string() + " failed");
  }
}

void AuditSink::log(Level level, std::string event, std::string message, Context context,
                    std::optional<std::string> exception) {
  AuditRecord r;
  r.timestamp_utc = clock_();
  r.logger = "safecast";
  r.level = level;
  r.event = std::move(event);
  r.message = std::move(message);
  r.task = task_;
  r.context = std::move(context);
  r.exception = std::move(exception);
  emit(r);
}

std::string error_event(ErrorKind kind) {
  std::string out;
  for (char c : error_name(kind)) {
    if (c >= 'A' && c <= 'Z') {
      if (!out.empty()) out.push_back('_');
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      out.push_back(c);
    }
  }
  return out;
}

ScopedErrorAudit::ScopedErrorAudit(AuditSink& sink)
    : sink_(sink), previous_(exchange_error_observer(this)) {}

ScopedErrorAudit::~ScopedErrorAudit() { exchange_error_observer(previous_); }

void ScopedErrorAudit::on_error(const Error& error) noexcept {
  try {
    sink_.log(Level::Error, error_event(error.kind()), error.detail(),
              {{"error", std::string(error.name())}}, std::string(error.what()));
  } catch (...) {
    // A failing log write must not mask the original error.
  }
  if (previous_ != nullptr) previous_->on_error(error);
}

}  // namespace safecast::audit
