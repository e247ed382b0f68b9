#pragma once

#include <string>
#include <string_view>

#include "safecast/time.hpp"

namespace safecast {

/// Where the data a model was fitted on came from.
struct ProvenanceRecord {
  std::string source_url;
  Timestamp retrieved_at;
  std::string content_hash;  // lowercase hex SHA-256 of the raw source bytes

  bool operator==(const ProvenanceRecord&) const = default;
};

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

bool is_sha256_hex(std::string_view s) noexcept;

ProvenanceRecord make_provenance(std::string source_url, std::string_view raw_bytes,
                                 Timestamp retrieved_at);

}  // namespace safecast
