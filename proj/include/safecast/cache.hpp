#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "safecast/audit.hpp"

namespace safecast {

/// Writes `payload` behind a one-line header carrying its SHA-256, so a
/// truncated or altered cache file is detectable.
void write_cache(const std::filesystem::path& path, std::string_view payload);

/// Missing file: nullopt, silently. Unreadable or corrupt file: a WARNING
/// record on `sink` (when given), the file is renamed to
/// `<path>.corrupt-<epoch seconds>` and nullopt is returned. Only a failed
/// rename raises (IoError).
std::optional<std::string> read_cache(const std::filesystem::path& path,
                                      const audit::Clock& clock = audit::system_clock(),
                                      audit::AuditSink* sink = nullptr);

}  // namespace safecast
