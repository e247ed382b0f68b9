#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "safecast/forecast.hpp"

namespace safecast {

inline constexpr std::string_view kModelFormatVersion = "1";

/// Canonical model document: sorted keys, no whitespace, floats in shortest
/// round-trip form (with ".0" on integral values), one trailing newline.
/// `self_hash` is the SHA-256 of the canonical document without it.
std::string serialize_model(const FittedForecaster& f);

/// Inverse of serialize_model. Raises UnsupportedVersion, ParseError or
/// HashMismatch; all floats are restored bit-exactly.
FittedForecaster deserialize_model(std::string_view bytes);

void save_model(const FittedForecaster& f, const std::filesystem::path& path);
FittedForecaster load_model(const std::filesystem::path& path);

}  // namespace safecast
