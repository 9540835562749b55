#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "arxivroll/corpus/extract.hpp"
#include "arxivroll/corpus/feed.hpp"
#include "arxivroll/corpus/store.hpp"

namespace arxivroll::corpus {

struct IngestOptions {
  std::vector<Domain> domains;
  DateRange window;
  std::string period_label;
  std::filesystem::path out;
  // Offline mode: <dir>/<domain>/<id>.{tex,txt,tar,tar.gz,gz} with a sidecar
  // <id>.meta.json holding {"title", "submitted"}.
  std::optional<std::filesystem::path> source_dir;
  std::size_t max_per_domain = 0;  // 0 = no limit
  int fetch_attempts = 3;
};

struct IngestSummary {
  std::size_t stored = 0;
  std::size_t abstract_only = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

// Builds an Article from raw source bytes. Falls back to the abstract when
// the source yields no usable LaTeX; `abstract_only` reports that.
Article build_article(const ArticleMeta& meta, std::string_view raw,
                      SourceFormat format, const std::string& abstract,
                      bool& abstract_only, std::vector<std::string>& warnings);

IngestSummary ingest_from_directory(const IngestOptions& options);
IngestSummary ingest_from_arxiv(const IngestOptions& options,
                                ArxivClient& client);

}  // namespace arxivroll::corpus
