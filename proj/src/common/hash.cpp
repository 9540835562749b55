#include "arxivroll/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace arxivroll {

namespace {

std::array<unsigned char, 32> sha256(std::string_view bytes) {
  std::array<unsigned char, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("sha256 digest failed");
  }
  return out;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  static constexpr char kHex[] = "0123456789abcdef";
  auto d = sha256(bytes);
  std::string out;
  out.reserve(64);
  for (unsigned char b : d) {
    out += kHex[b >> 4];
    out += kHex[b & 0xf];
  }
  return out;
}

std::string stable_id(std::string_view bytes, std::size_t hex_chars) {
  return sha256_hex(bytes).substr(0, hex_chars);
}

std::uint64_t hash64(std::string_view bytes) {
  auto d = sha256(bytes);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | d[i];
  return v;
}

double hash_unit(std::string_view bytes) {
  return static_cast<double>(hash64(bytes) >> 11) * 0x1.0p-53;
}

}  // namespace arxivroll
