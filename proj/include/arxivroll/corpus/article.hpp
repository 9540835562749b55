#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "arxivroll/common.hpp"
#include "json.hpp"

namespace arxivroll::corpus {

struct ArticleMeta {
  std::string arxiv_id;
  Domain domain = Domain::kCs;
  Date submitted;
  std::string title;

  bool operator==(const ArticleMeta&) const = default;
};

// A cleaned document. Paragraphs are in document order, non-empty, contain
// no newline, and have mathematics replaced by kMathToken.
struct Article {
  ArticleMeta meta;
  std::vector<std::string> paragraphs;
  std::size_t raw_char_count = 0;

  bool operator==(const Article&) const = default;
};

// Throws DomainError if an invariant does not hold.
void validate(const Article& article);

struct CorpusManifest {
  std::string period_label;
  Date window_start;
  Date window_end;
  std::map<std::string, std::size_t> counts;  // domain code -> articles
  std::vector<std::string> abstract_only;     // ids ingested from abstracts

  bool operator==(const CorpusManifest&) const = default;
};

void to_json(nlohmann::json& j, const ArticleMeta& m);
void from_json(const nlohmann::json& j, ArticleMeta& m);
void to_json(nlohmann::json& j, const Article& a);
void from_json(const nlohmann::json& j, Article& a);
void to_json(nlohmann::json& j, const CorpusManifest& m);
void from_json(const nlohmann::json& j, CorpusManifest& m);

}  // namespace arxivroll::corpus
