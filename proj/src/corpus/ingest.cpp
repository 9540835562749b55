#include "arxivroll/corpus/ingest.hpp"

#include <algorithm>

#include "arxivroll/corpus/extract.hpp"
#include "arxivroll/corpus/source.hpp"
#include "arxivroll/fsutil.hpp"

namespace arxivroll::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

Article build_article(const ArticleMeta& meta, std::string_view raw,
                      SourceFormat format, const std::string& abstract,
                      bool& abstract_only, std::vector<std::string>& warnings) {
  Article article;
  article.meta = meta;
  abstract_only = false;
  std::optional<std::string> text;
  if (format == SourceFormat::kPlain) {
    text = std::string(raw);
  } else {
    try {
      text = unpack_latex_source(raw);
    } catch (const DomainError& e) {
      warnings.push_back(meta.arxiv_id + ": " + e.what());
    }
  }
  if (text) {
    Extraction ex = extract_text(*text, format);
    for (auto& w : ex.warnings) warnings.push_back(meta.arxiv_id + ": " + w);
    article.paragraphs = std::move(ex.paragraphs);
    article.raw_char_count = ex.raw_char_count;
  }
  if (article.paragraphs.empty()) {
    Extraction ex = extract_text(abstract, SourceFormat::kPlain);
    article.paragraphs = std::move(ex.paragraphs);
    article.raw_char_count = ex.raw_char_count;
    abstract_only = true;
  }
  return article;
}

namespace {

// "2404.01234.tar.gz" -> ("2404.01234", kLatex)
std::optional<std::pair<std::string, SourceFormat>> classify(
    const fs::path& p) {
  std::string name = p.filename().string();
  for (std::string_view ext : {".tar.gz", ".tgz", ".tex.gz", ".tar", ".gz",
                               ".tex"}) {
    if (name.size() > ext.size() &&
        name.compare(name.size() - ext.size(), ext.size(), ext) == 0) {
      return std::pair{name.substr(0, name.size() - ext.size()),
                       SourceFormat::kLatex};
    }
  }
  if (p.extension() == ".txt") {
    return std::pair{p.stem().string(), SourceFormat::kPlain};
  }
  return std::nullopt;
}

void store_or_skip(CorpusStore& store, const Article& article,
                   bool abstract_only, IngestSummary& summary) {
  if (article.paragraphs.empty()) {
    summary.warnings.push_back(article.meta.arxiv_id + ": no text, skipped");
    ++summary.skipped;
    return;
  }
  try {
    store.store_article(article, abstract_only);
    ++summary.stored;
    if (abstract_only) ++summary.abstract_only;
  } catch (const ConflictError& e) {
    summary.warnings.push_back(e.what());
    ++summary.skipped;
  }
}

}  // namespace

IngestSummary ingest_from_directory(const IngestOptions& options) {
  if (!options.source_dir) throw PreconditionError("no source directory");
  CorpusStore store(options.out);
  store.init(options.period_label, options.window);
  IngestSummary summary;
  for (Domain domain : options.domains) {
    fs::path dir = *options.source_dir / std::string(to_string(domain));
    if (!fs::is_directory(dir)) {
      summary.warnings.push_back("no source directory for " +
                                 std::string(to_string(domain)));
      continue;
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::size_t taken = 0;
    for (const auto& file : files) {
      if (options.max_per_domain && taken >= options.max_per_domain) break;
      auto kind = classify(file);
      if (!kind) continue;
      const auto& [id, format] = *kind;
      fs::path meta_path = dir / (id + ".meta.json");
      if (!fs::exists(meta_path)) {
        summary.warnings.push_back(file.string() + ": missing " +
                                   meta_path.filename().string());
        ++summary.skipped;
        continue;
      }
      json mj = json::parse(read_file(meta_path));
      ArticleMeta meta;
      meta.arxiv_id = mj.value("arxiv_id", id);
      meta.domain = domain;
      meta.title = mj.value("title", std::string());
      meta.submitted = date_from_string(mj.at("submitted").get<std::string>());
      if (!options.window.contains(meta.submitted)) continue;
      bool abstract_only = false;
      Article article =
          build_article(meta, read_file(file), format,
                        mj.value("abstract", std::string()), abstract_only,
                        summary.warnings);
      store_or_skip(store, article, abstract_only, summary);
      ++taken;
    }
  }
  return summary;
}

namespace {

template <typename F>
auto with_retries(int attempts, F&& f) -> decltype(f()) {
  for (int i = 1;; ++i) {
    try {
      return f();
    } catch (const NetworkError& e) {
      if (!e.retryable() || i >= attempts) throw;
    }
  }
}

}  // namespace

IngestSummary ingest_from_arxiv(const IngestOptions& options,
                                ArxivClient& client) {
  CorpusStore store(options.out);
  store.init(options.period_label, options.window);
  IngestSummary summary;
  for (Domain domain : options.domains) {
    std::size_t taken = 0;
    for (std::size_t page = 0;; ++page) {
      auto entries = with_retries(options.fetch_attempts, [&] {
        return client.fetch_listing(domain, options.window, page);
      });
      if (entries.empty()) break;
      for (const auto& entry : entries) {
        if (options.max_per_domain && taken >= options.max_per_domain) break;
        if (store.contains(entry.meta.arxiv_id)) {
          ++summary.skipped;
          continue;
        }
        std::string raw;
        try {
          raw = with_retries(options.fetch_attempts, [&] {
            return client.fetch_source(entry.meta.arxiv_id);
          });
        } catch (const NetworkError& e) {
          summary.warnings.push_back(entry.meta.arxiv_id + ": " + e.what());
        }
        bool abstract_only = false;
        Article article =
            build_article(entry.meta, raw, SourceFormat::kLatex, entry.summary,
                          abstract_only, summary.warnings);
        store_or_skip(store, article, abstract_only, summary);
        ++taken;
      }
      if (options.max_per_domain && taken >= options.max_per_domain) break;
    }
  }
  return summary;
}

}  // namespace arxivroll::corpus
