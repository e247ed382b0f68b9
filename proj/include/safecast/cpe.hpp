#pragma once

#include <array>
#include <string>
#include <string_view>

namespace safecast {

/// CPE 2.3 formatted-string identifier for an application (part "a").
/// Components are held in their bound (escaped) form; "*" is ANY.
class CpeIdentifier {
 public:
  enum Field {
    Part, Vendor, Product, Version, Update, Edition, Language, SwEdition, TargetSw, TargetHw, Other,
  };
  static constexpr std::size_t kFields = 11;

  explicit CpeIdentifier(std::array<std::string, kFields> bound);

  const std::string& bound(Field f) const { return fields_[f]; }
  /// Component with escapes removed.
  std::string value(Field f) const;

  /// "cpe:2.3:" followed by the 11 components.
  std::string str() const;

  bool operator==(const CpeIdentifier&) const = default;

 private:
  std::array<std::string, kFields> fields_;
};

struct CpeOptions {
  std::string target_sw = "*";
};

/// Escapes every character outside [a-z0-9._-] with a backslash. A component
/// that is exactly "*" stays the ANY wildcard. Empty or non-printable-ASCII
/// components raise InvalidComponent.
CpeIdentifier cpe_for(std::string_view vendor, std::string_view product, std::string_view version,
                      const CpeOptions& options = {});

/// Parses a 13-field formatted string. Raises InvalidComponent.
CpeIdentifier parse_cpe(std::string_view text);

std::string cpe_escape(std::string_view raw);

}  // namespace safecast
