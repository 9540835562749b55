#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arxivroll::scpgen {

// Lowercased runs of ASCII letters and digits.
std::vector<std::string> tokenize(std::string_view text);

struct RankedSentence {
  std::size_t index;  // position in the pool
  double similarity;  // cosine in [0, 1]
};

// Ranks `pool` by TF-IDF cosine similarity to `query`, best first.
//
// tf is the raw count in a sentence; idf(t) = ln((1 + |pool|) / (1 + df(t))) + 1
// over the pool; vectors are L2-normalized. Query terms outside the pool
// vocabulary are ignored. Ties keep pool order, so a query with no usable
// tokens returns the pool in document order with similarity 0.
std::vector<RankedSentence> tfidf_rank(std::string_view query,
                                       std::span<const std::string> pool);

}  // namespace arxivroll::scpgen
