#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "arxivroll/corpus/article.hpp"

namespace arxivroll::corpus {

// On-disk corpus: <root>/<domain>/<arxiv_id>.json plus <root>/manifest.json.
// Old-style ids containing '/' are stored with '_' in the file name.
class CorpusStore {
 public:
  explicit CorpusStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  // Creates the root and a manifest if none exists yet. An existing manifest
  // keeps its counts; its period and window are replaced.
  void init(const std::string& period_label, const DateRange& window);

  // Persists one article atomically and bumps the manifest count under the
  // corpus lock. Returns the record id "<domain>/<arxiv_id>".
  // Throws ConflictError if the id is already stored in any domain.
  std::string store_article(const Article& article, bool abstract_only = false);

  bool contains(const std::string& arxiv_id) const;
  Article load_article(Domain domain, const std::string& arxiv_id) const;
  // Every article of the domain, ordered by arxiv_id.
  std::vector<Article> load_domain(Domain domain) const;
  CorpusManifest manifest() const;

  std::filesystem::path article_path(Domain domain,
                                     const std::string& arxiv_id) const;

 private:
  std::filesystem::path manifest_path() const;
  std::filesystem::path lock_path() const;
  void write_manifest(const CorpusManifest& m) const;

  std::filesystem::path root_;
};

}  // namespace arxivroll::corpus
