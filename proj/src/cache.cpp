#include "safecast/cache.hpp"

#include <fstream>
#include <sstream>

#include "safecast/error.hpp"
#include "safecast/provenance.hpp"

namespace safecast {

namespace {

constexpr std::string_view kMagic = "safecast-cache/1 ";

// Payload if `bytes` is a well-formed cache document.
std::optional<std::string> unwrap(const std::string& bytes) {
  if (bytes.compare(0, kMagic.size(), kMagic) != 0) return std::nullopt;
  const std::size_t nl = bytes.find('\n');
  if (nl != kMagic.size() + 64) return std::nullopt;
  const std::string hash = bytes.substr(kMagic.size(), 64);
  std::string payload = bytes.substr(nl + 1);
  if (sha256_hex(payload) != hash) return std::nullopt;
  return payload;
}

}  // namespace

void write_cache(const std::filesystem::path& path, std::string_view payload) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorKind::IoError, "cannot write cache " + path.string());
  out << kMagic << sha256_hex(payload) << '\n' << payload;
  out.flush();
  if (!out) raise(ErrorKind::IoError, "write to cache " + path.string() + " failed");
}

std::optional<std::string> read_cache(const std::filesystem::path& path, const audit::Clock& clock,
                                      audit::AuditSink* sink) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;

  std::string reason;
  std::optional<std::string> payload;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    reason = "unreadable";
  } else {
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
      reason = "read error";
    } else {
      payload = unwrap(buf.str());
      if (!payload) reason = "header or checksum mismatch";
    }
  }
  if (payload) return payload;
  in.close();

  const std::filesystem::path target =
      path.string() + ".corrupt-" + std::to_string(clock().epoch_seconds());
  std::filesystem::rename(path, target, ec);
  if (ec) {
    raise(ErrorKind::IoError, "cannot quarantine " + path.string() + ": " + ec.message());
  }
  if (sink != nullptr) {
    sink->log(audit::Level::Warning, "cache_quarantine",
              "corrupt cache " + path.string() + " (" + reason + ") moved to " + target.string(),
              {{"path", path.string()}, {"quarantined_as", target.string()}});
  }
  return std::nullopt;
}

}  // namespace safecast
