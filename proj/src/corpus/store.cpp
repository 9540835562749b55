#include "arxivroll/corpus/store.hpp"

#include <algorithm>

#include "arxivroll/fsutil.hpp"

namespace arxivroll::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string file_stem_for(const std::string& arxiv_id) {
  std::string s = arxiv_id;
  std::replace(s.begin(), s.end(), '/', '_');
  return s;
}

}  // namespace

CorpusStore::CorpusStore(fs::path root) : root_(std::move(root)) {}

fs::path CorpusStore::manifest_path() const { return root_ / "manifest.json"; }
fs::path CorpusStore::lock_path() const { return root_ / ".manifest.lock"; }

fs::path CorpusStore::article_path(Domain domain,
                                   const std::string& arxiv_id) const {
  return root_ / std::string(to_string(domain)) /
         (file_stem_for(arxiv_id) + ".json");
}

void CorpusStore::write_manifest(const CorpusManifest& m) const {
  write_file_atomic(manifest_path(), json(m).dump(2) + "\n");
}

void CorpusStore::init(const std::string& period_label,
                       const DateRange& window) {
  if (!window.valid()) {
    throw PreconditionError("corpus window starts after it ends");
  }
  fs::create_directories(root_);
  FileLock lock(lock_path());
  CorpusManifest m;
  if (fs::exists(manifest_path())) m = manifest();
  m.period_label = period_label;
  m.window_start = window.start;
  m.window_end = window.end;
  write_manifest(m);
}

CorpusManifest CorpusStore::manifest() const {
  if (!fs::exists(manifest_path())) {
    throw DomainError("no manifest.json under " + root_.string());
  }
  return json::parse(read_file(manifest_path())).get<CorpusManifest>();
}

bool CorpusStore::contains(const std::string& arxiv_id) const {
  return std::any_of(kAllDomains.begin(), kAllDomains.end(), [&](Domain d) {
    return fs::exists(article_path(d, arxiv_id));
  });
}

std::string CorpusStore::store_article(const Article& article,
                                       bool abstract_only) {
  validate(article);
  if (!fs::is_directory(root_)) {
    throw PreconditionError("corpus root " + root_.string() +
                            " does not exist");
  }
  FileLock lock(lock_path());
  const std::string& id = article.meta.arxiv_id;
  if (contains(id)) {
    throw ConflictError("article " + id + " is already in the corpus");
  }
  CorpusManifest m;
  if (fs::exists(manifest_path())) m = manifest();
  write_file_atomic(article_path(article.meta.domain, id),
                    json(article).dump(2) + "\n");
  ++m.counts[std::string(to_string(article.meta.domain))];
  if (abstract_only) m.abstract_only.push_back(id);
  write_manifest(m);
  return std::string(to_string(article.meta.domain)) + "/" + id;
}

Article CorpusStore::load_article(Domain domain,
                                  const std::string& arxiv_id) const {
  return json::parse(read_file(article_path(domain, arxiv_id))).get<Article>();
}

std::vector<Article> CorpusStore::load_domain(Domain domain) const {
  std::vector<Article> out;
  fs::path dir = root_ / std::string(to_string(domain));
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    out.push_back(json::parse(read_file(entry.path())).get<Article>());
  }
  std::sort(out.begin(), out.end(), [](const Article& a, const Article& b) {
    return a.meta.arxiv_id < b.meta.arxiv_id;
  });
  return out;
}

}  // namespace arxivroll::corpus
