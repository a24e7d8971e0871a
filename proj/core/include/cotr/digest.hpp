#pragma once

#include <string>
#include <string_view>

namespace cotr {

/// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

/// Shortest round-trip decimal form of a double (std::to_chars), used
/// wherever a float participates in a digest or serialized record.
std::string canonical_double(double value);

}  // namespace cotr
