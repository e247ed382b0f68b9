#include "safecast/cpe.hpp"

#include <vector>

#include "safecast/error.hpp"

namespace safecast {

namespace {

bool plain(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
}

bool printable(char c) { return c > 0x20 && c < 0x7f; }

void check_bound(std::string_view s) {
  if (s.empty()) raise(ErrorKind::InvalidComponent, "empty CPE component");
  if (s == "*") return;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (plain(c)) continue;
    if (c == '\\' && i + 1 < s.size() && printable(s[i + 1])) {
      ++i;
      continue;
    }
    raise(ErrorKind::InvalidComponent, "CPE component '" + std::string(s) +
                                           "' has unescaped character at offset " + std::to_string(i));
  }
}

}  // namespace

std::string cpe_escape(std::string_view raw) {
  if (raw.empty()) raise(ErrorKind::InvalidComponent, "empty CPE component");
  std::string out;
  for (char c : raw) {
    if (!printable(c)) {
      raise(ErrorKind::InvalidComponent, "CPE component contains whitespace or a non-printable character");
    }
    if (!plain(c)) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

CpeIdentifier::CpeIdentifier(std::array<std::string, kFields> bound) : fields_(std::move(bound)) {
  if (fields_[Part] != "a") raise(ErrorKind::InvalidComponent, "CPE part must be 'a'");
  for (const std::string& f : fields_) check_bound(f);
}

std::string CpeIdentifier::value(Field f) const {
  const std::string& b = fields_[f];
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == '\\') ++i;
    out.push_back(b[i]);
  }
  return out;
}

std::string CpeIdentifier::str() const {
  std::string out = "cpe:2.3";
  for (const std::string& f : fields_) out += ":" + f;
  return out;
}

CpeIdentifier cpe_for(std::string_view vendor, std::string_view product, std::string_view version,
                      const CpeOptions& options) {
  auto bind = [](std::string_view raw) { return raw == "*" ? std::string("*") : cpe_escape(raw); };
  std::array<std::string, CpeIdentifier::kFields> f;
  f.fill("*");
  f[CpeIdentifier::Part] = "a";
  f[CpeIdentifier::Vendor] = bind(vendor);
  f[CpeIdentifier::Product] = bind(product);
  f[CpeIdentifier::Version] = bind(version);
  f[CpeIdentifier::TargetSw] = bind(options.target_sw);
  return CpeIdentifier(std::move(f));
}

CpeIdentifier parse_cpe(std::string_view text) {
  std::vector<std::string> parts(1);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\\' && i + 1 < text.size()) {
      parts.back().push_back(c);
      parts.back().push_back(text[++i]);
    } else if (c == ':') {
      parts.emplace_back();
    } else {
      parts.back().push_back(c);
    }
  }
  if (parts.size() != 2 + CpeIdentifier::kFields || parts[0] != "cpe" || parts[1] != "2.3") {
    raise(ErrorKind::InvalidComponent,
          "'" + std::string(text) + "' is not a 13-field cpe:2.3 formatted string");
  }
  std::array<std::string, CpeIdentifier::kFields> f;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::move(parts[i + 2]);
  return CpeIdentifier(std::move(f));
}

}  // namespace safecast
