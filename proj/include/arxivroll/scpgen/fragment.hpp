#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "arxivroll/corpus/article.hpp"
#include "arxivroll/rng.hpp"

namespace arxivroll::scpgen {

struct FragmentConfig {
  std::size_t n_paragraphs = 1;  // contiguous paragraphs per fragment
  std::size_t min_words = 80;
  double max_math_ratio = 0.15;  // share of words that are the math token
  std::size_t min_sentences_seq = 4;
  std::size_t min_sentences_cloze = 6;
  std::size_t min_sentences_pred = 3;

  // Throws DomainError when a bound is violated.
  void validate() const;

  bool operator==(const FragmentConfig&) const = default;
};

void to_json(nlohmann::json& j, const FragmentConfig& c);
void from_json(const nlohmann::json& j, FragmentConfig& c);

struct Fragment {
  std::string article_id;
  std::size_t span_start = 0;  // paragraph indices [span_start, span_end)
  std::size_t span_end = 0;
  std::vector<std::string> sentences;
  std::size_t word_count = 0;
  std::size_t math_tokens = 0;

  // Sentences joined by single spaces.
  std::string text() const;
};

enum class RejectReason {
  kTooShort,
  kTooMuchMath,
  kTooFewSentences,
  kTooFewDistractors,
};

std::string_view to_string(RejectReason r);

// A typed "no case from this input" outcome; not an error.
struct Rejection {
  RejectReason reason;
  std::string detail;
};

template <typename T>
using Outcome = std::variant<T, Rejection>;

// Builds the fragment starting at paragraph `start` and applies the quality
// filters: word count, math density and a minimum of three sentences.
Outcome<Fragment> make_fragment(const corpus::Article& article,
                                std::size_t start, const FragmentConfig& config);

// Uniformly random window of config.n_paragraphs paragraphs, then the same
// filters as make_fragment. Throws PreconditionError when the article has
// fewer paragraphs than the window needs.
Outcome<Fragment> sample_fragment(const corpus::Article& article,
                                  const FragmentConfig& config, Rng& rng);

}  // namespace arxivroll::scpgen
