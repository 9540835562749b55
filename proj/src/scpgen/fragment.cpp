#include "arxivroll/scpgen/fragment.hpp"

#include "arxivroll/scpgen/sentences.hpp"

namespace arxivroll::scpgen {

void FragmentConfig::validate() const {
  if (n_paragraphs < 1) throw DomainError("n_paragraphs must be >= 1");
  if (min_words < 1) throw DomainError("min_words must be >= 1");
  if (!(max_math_ratio >= 0.0 && max_math_ratio <= 1.0)) {
    throw DomainError("max_math_ratio must lie in [0, 1]");
  }
  if (min_sentences_seq < 4) throw DomainError("min_sentences_seq must be >= 4");
  if (min_sentences_cloze < 6) {
    throw DomainError("min_sentences_cloze must be >= 6");
  }
  if (min_sentences_pred < 3) throw DomainError("min_sentences_pred must be >= 3");
}

void to_json(nlohmann::json& j, const FragmentConfig& c) {
  j = nlohmann::json{{"n_paragraphs", c.n_paragraphs},
                     {"min_words", c.min_words},
                     {"max_math_ratio", c.max_math_ratio},
                     {"min_sentences_seq", c.min_sentences_seq},
                     {"min_sentences_cloze", c.min_sentences_cloze},
                     {"min_sentences_pred", c.min_sentences_pred}};
}

void from_json(const nlohmann::json& j, FragmentConfig& c) {
  FragmentConfig d;
  c.n_paragraphs = j.value("n_paragraphs", d.n_paragraphs);
  c.min_words = j.value("min_words", d.min_words);
  c.max_math_ratio = j.value("max_math_ratio", d.max_math_ratio);
  c.min_sentences_seq = j.value("min_sentences_seq", d.min_sentences_seq);
  c.min_sentences_cloze = j.value("min_sentences_cloze", d.min_sentences_cloze);
  c.min_sentences_pred = j.value("min_sentences_pred", d.min_sentences_pred);
}

std::string Fragment::text() const { return join(sentences, " "); }

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::kTooShort:
      return "too-short";
    case RejectReason::kTooMuchMath:
      return "too-much-math";
    case RejectReason::kTooFewSentences:
      return "too-few-sentences";
    case RejectReason::kTooFewDistractors:
      return "too-few-distractors";
  }
  return "rejected";
}

namespace {

std::size_t count_occurrences(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

Outcome<Fragment> make_fragment(const corpus::Article& article,
                                std::size_t start,
                                const FragmentConfig& config) {
  if (start + config.n_paragraphs > article.paragraphs.size()) {
    throw PreconditionError("fragment window runs past the article end");
  }
  Fragment f;
  f.article_id = article.meta.arxiv_id;
  f.span_start = start;
  f.span_end = start + config.n_paragraphs;
  for (std::size_t p = f.span_start; p < f.span_end; ++p) {
    for (auto& s : split_sentences(article.paragraphs[p])) {
      f.word_count += count_words(s);
      f.math_tokens += count_occurrences(s, kMathToken);
      f.sentences.push_back(std::move(s));
    }
  }
  if (f.word_count < config.min_words) {
    return Rejection{RejectReason::kTooShort,
                     std::to_string(f.word_count) + " words"};
  }
  double ratio = static_cast<double>(f.math_tokens) /
                 static_cast<double>(f.word_count);
  if (ratio > config.max_math_ratio) {
    return Rejection{RejectReason::kTooMuchMath,
                     "math ratio " + std::to_string(ratio)};
  }
  if (f.sentences.size() < 3) {
    return Rejection{RejectReason::kTooFewSentences,
                     std::to_string(f.sentences.size()) + " sentences"};
  }
  return f;
}

Outcome<Fragment> sample_fragment(const corpus::Article& article,
                                  const FragmentConfig& config, Rng& rng) {
  if (article.paragraphs.empty()) {
    throw PreconditionError("article " + article.meta.arxiv_id +
                            " has no paragraphs");
  }
  if (article.paragraphs.size() < config.n_paragraphs) {
    throw PreconditionError("article " + article.meta.arxiv_id + " has fewer than " +
                            std::to_string(config.n_paragraphs) + " paragraphs");
  }
  std::size_t windows = article.paragraphs.size() - config.n_paragraphs + 1;
  return make_fragment(article, rng.below(windows), config);
}

}  // namespace arxivroll::scpgen
