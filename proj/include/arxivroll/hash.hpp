#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace arxivroll {

inline constexpr std::string_view kDigestAlgorithm = "sha256";

// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

// Short stable identifier: the first `hex_chars` characters of sha256_hex.
std::string stable_id(std::string_view bytes, std::size_t hex_chars = 16);

// First eight digest bytes read big-endian. Used to derive independent
// sub-seeds and per-item pseudo-random draws from textual keys.
std::uint64_t hash64(std::string_view bytes);

// hash64 mapped onto [0, 1) with 53 bits of resolution.
double hash_unit(std::string_view bytes);

}  // namespace arxivroll
