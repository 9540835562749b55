#include "arxivroll/rng.hpp"

#include <string>

#include "arxivroll/hash.hpp"

namespace arxivroll {

Rng Rng::derive(std::uint64_t seed, std::string_view key) {
  std::string material = "seed:" + std::to_string(seed) + "|";
  material += key;
  return Rng(hash64(material));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the low (2^64 mod bound) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace arxivroll
