#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "safecast/audit.hpp"

namespace safecast::audit {

namespace {

constexpr const char* kMandatory[] = {"schema_version", "timestamp_utc", "logger",
                                      "level",          "event",         "message"};
constexpr const char* kOptional[] = {"task", "context", "exception"};

bool known_field(const std::string& key) {
  for (const char* f : kMandatory) {
    if (key == f) return true;
  }
  for (const char* f : kOptional) {
    if (key == f) return true;
  }
  return false;
}

}  // namespace

LogReport validate_log_text(std::string_view text) {
  static const std::regex kTimestamp(R"(^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}\.\d{6}Z$)");
  LogReport report;
  std::optional<Timestamp> previous;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    const std::string line(text.substr(begin, end - begin));
    begin = end + 1;
    ++line_no;
    auto violation = [&](std::string reason) {
      report.violations.push_back({line_no, std::move(reason)});
    };

    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      violation("invalid JSON");
      continue;
    }
    if (!j.is_object()) {
      violation("record is not a JSON object");
      continue;
    }
    ++report.records;

    bool mandatory_ok = true;
    for (const char* field : kMandatory) {
      if (!j.contains(field)) {
        violation(std::string("missing mandatory field '") + field + "'");
        mandatory_ok = false;
      } else if (!j[field].is_string()) {
        violation(std::string("field '") + field + "' is not a string");
        mandatory_ok = false;
      } else if (j[field].get_ref<const std::string&>().empty()) {
        violation(std::string("field '") + field + "' is empty");
        mandatory_ok = false;
      }
    }
    for (const auto& [key, value] : j.items()) {
      if (!known_field(key)) violation("unknown field '" + key + "'");
    }
    if (j.contains("task") && !j["task"].is_string()) violation("field 'task' is not a string");
    if (j.contains("exception") && !j["exception"].is_string()) {
      violation("field 'exception' is not a string");
    }
    if (j.contains("context")) {
      if (!j["context"].is_object()) {
        violation("field 'context' is not an object");
      } else {
        for (const auto& [key, value] : j["context"].items()) {
          if (value.is_structured()) violation("context entry '" + key + "' is not flat");
        }
      }
    }
    if (!mandatory_ok) continue;

    if (j["schema_version"] != std::string(kSchemaVersion)) {
      violation("schema_version '" + j["schema_version"].get<std::string>() + "' is not " +
                std::string(kSchemaVersion));
    }
    const auto level = j["level"].get<std::string>();
    if (!parse_level(level)) violation("invalid level '" + level + "'");

    const auto ts = j["timestamp_utc"].get<std::string>();
    if (!std::regex_match(ts, kTimestamp)) {
      violation("timestamp_utc '" + ts + "' is not ISO 8601 UTC with microseconds and Z");
      continue;
    }
    const auto t = Timestamp::try_parse(ts);
    if (!t) {
      violation("timestamp_utc '" + ts + "' is not a valid date");
      continue;
    }
    if (previous && *t < *previous) violation("timestamp_utc decreases");
    previous = t;
  }
  return report;
}

LogReport validate_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return validate_log_text(buf.str());
}

}  // namespace safecast::audit
