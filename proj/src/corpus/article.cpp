#include "arxivroll/corpus/article.hpp"

namespace arxivroll::corpus {

using nlohmann::json;

void validate(const Article& article) {
  if (article.meta.arxiv_id.empty()) {
    throw DomainError("article has an empty arxiv_id");
  }
  for (const auto& p : article.paragraphs) {
    if (p.empty()) {
      throw DomainError("article " + article.meta.arxiv_id +
                        " has an empty paragraph");
    }
    if (p.find('\n') != std::string::npos) {
      throw DomainError("article " + article.meta.arxiv_id +
                        " has a paragraph containing a newline");
    }
  }
}

void to_json(json& j, const ArticleMeta& m) {
  j = json{{"arxiv_id", m.arxiv_id},
           {"domain", std::string(to_string(m.domain))},
           {"submitted", m.submitted.str()},
           {"title", m.title}};
}

void from_json(const json& j, ArticleMeta& m) {
  m.arxiv_id = j.at("arxiv_id").get<std::string>();
  m.domain = domain_from_string(j.at("domain").get<std::string>());
  m.submitted = date_from_string(j.at("submitted").get<std::string>());
  m.title = j.value("title", std::string());
}

void to_json(json& j, const Article& a) {
  to_json(j, a.meta);
  j["paragraphs"] = a.paragraphs;
  j["raw_char_count"] = a.raw_char_count;
}

void from_json(const json& j, Article& a) {
  from_json(j, a.meta);
  a.paragraphs = j.at("paragraphs").get<std::vector<std::string>>();
  a.raw_char_count = j.value("raw_char_count", std::size_t{0});
  validate(a);
}

void to_json(json& j, const CorpusManifest& m) {
  j = json{{"period_label", m.period_label},
           {"window_start", m.window_start.str()},
           {"window_end", m.window_end.str()},
           {"counts", m.counts},
           {"abstract_only", m.abstract_only}};
}

void from_json(const json& j, CorpusManifest& m) {
  m.period_label = j.value("period_label", std::string());
  m.window_start = date_from_string(j.at("window_start").get<std::string>());
  m.window_end = date_from_string(j.at("window_end").get<std::string>());
  if (!(m.window_start <= m.window_end)) {
    throw DomainError("manifest window_start is after window_end");
  }
  m.counts = j.value("counts", std::map<std::string, std::size_t>{});
  m.abstract_only = j.value("abstract_only", std::vector<std::string>{});
}

}  // namespace arxivroll::corpus
