#pragma once

#include <string>
#include <string_view>

namespace veracity {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

}  // namespace veracity
