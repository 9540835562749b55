#include "arxivroll/scpgen/tfidf.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_map>

#include "arxivroll/common.hpp"

namespace arxivroll::scpgen {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)) &&
        static_cast<unsigned char>(c) < 0x80) {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

namespace {

using SparseVector = std::map<std::size_t, double>;  // term id -> weight

void l2_normalize(SparseVector& v) {
  double norm = 0.0;
  for (const auto& [id, w] : v) norm += w * w;
  norm = std::sqrt(norm);
  if (norm == 0.0) return;
  for (auto& [id, w] : v) w /= norm;
}

double dot(const SparseVector& a, const SparseVector& b) {
  const SparseVector& small = a.size() <= b.size() ? a : b;
  const SparseVector& large = a.size() <= b.size() ? b : a;
  double sum = 0.0;
  for (const auto& [id, w] : small) {
    auto it = large.find(id);
    if (it != large.end()) sum += w * it->second;
  }
  return sum;
}

}  // namespace

std::vector<RankedSentence> tfidf_rank(std::string_view query,
                                       std::span<const std::string> pool) {
  if (pool.empty()) throw PreconditionError("tfidf_rank needs a non-empty pool");

  std::unordered_map<std::string, std::size_t> vocab;
  std::vector<std::map<std::size_t, double>> counts(pool.size());
  for (std::size_t d = 0; d < pool.size(); ++d) {
    for (auto& tok : tokenize(pool[d])) {
      auto [it, inserted] = vocab.emplace(std::move(tok), vocab.size());
      counts[d][it->second] += 1.0;
    }
  }
  std::vector<double> df(vocab.size(), 0.0);
  for (const auto& c : counts) {
    for (const auto& [id, n] : c) df[id] += 1.0;
  }
  const double n_docs = static_cast<double>(pool.size());
  std::vector<double> idf(vocab.size());
  for (std::size_t t = 0; t < idf.size(); ++t) {
    idf[t] = std::log((1.0 + n_docs) / (1.0 + df[t])) + 1.0;
  }

  SparseVector q;
  for (const auto& tok : tokenize(query)) {
    auto it = vocab.find(tok);
    if (it != vocab.end()) q[it->second] += 1.0;
  }
  for (auto& [id, w] : q) w *= idf[id];
  l2_normalize(q);

  std::vector<RankedSentence> ranked;
  ranked.reserve(pool.size());
  for (std::size_t d = 0; d < pool.size(); ++d) {
    SparseVector v = counts[d];
    for (auto& [id, w] : v) w *= idf[id];
    l2_normalize(v);
    ranked.push_back({d, q.empty() ? 0.0 : dot(q, v)});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedSentence& a, const RankedSentence& b) {
                     return a.similarity > b.similarity;
                   });
  return ranked;
}

}  // namespace arxivroll::scpgen
