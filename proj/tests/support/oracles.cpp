#include "oracles.hpp"

#include <zlib.h>

#include <cctype>
#include <cmath>
#include <cstring>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace oracle {

namespace {

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u < 128 && std::isalnum(u)) {
      cur += static_cast<char>(std::tolower(u));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

std::vector<double> tfidf_cosines(const std::string& query,
                                  const std::vector<std::string>& pool) {
  std::vector<std::vector<std::string>> docs;
  std::set<std::string> vocab_set;
  for (const auto& s : pool) {
    docs.push_back(words(s));
    for (const auto& w : docs.back()) vocab_set.insert(w);
  }
  std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());
  const double n = static_cast<double>(pool.size());

  std::vector<double> idf(vocab.size());
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    double df = 0;
    for (const auto& d : docs) {
      bool present = false;
      for (const auto& w : d) present = present || w == vocab[t];
      df += present ? 1 : 0;
    }
    idf[t] = std::log((1.0 + n) / (1.0 + df)) + 1.0;
  }
  auto vectorize = [&](const std::vector<std::string>& d) {
    std::vector<double> v(vocab.size(), 0.0);
    for (std::size_t t = 0; t < vocab.size(); ++t) {
      double tf = 0;
      for (const auto& w : d) tf += w == vocab[t] ? 1 : 0;
      v[t] = tf * idf[t];
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 0) {
      for (double& x : v) x /= norm;
    }
    return v;
  };
  auto q = vectorize(words(query));
  std::vector<double> out;
  for (const auto& d : docs) {
    auto v = vectorize(d);
    double dot = 0;
    for (std::size_t t = 0; t < vocab.size(); ++t) dot += q[t] * v[t];
    out.push_back(dot);
  }
  return out;
}

std::vector<std::size_t> tfidf_order(const std::vector<double>& cosines) {
  std::vector<std::size_t> order;
  std::vector<bool> used(cosines.size(), false);
  for (std::size_t k = 0; k < cosines.size(); ++k) {
    std::size_t best = cosines.size();
    for (std::size_t i = 0; i < cosines.size(); ++i) {
      if (used[i]) continue;
      if (best == cosines.size() || cosines[i] > cosines[best] + 1e-12) best = i;
    }
    used[best] = true;
    order.push_back(best);
  }
  return order;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / n, my = sy / n;
  double cov = 0, vx = 0, vy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - mx) * (y[i] - my);
    vx += (x[i] - mx) * (x[i] - mx);
    vy += (y[i] - my) * (y[i] - my);
  }
  return cov / std::sqrt(vx * vy);
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double smaller = 0, equal = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] < v[i]) smaller += 1;
      if (v[j] == v[i]) equal += 1;
    }
    r[i] = 1 + smaller + (equal - 1) / 2;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

double kendall(const std::vector<double>& x, const std::vector<double>& y) {
  double concordant = 0, discordant = 0, tie_x = 0, tie_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0 && dy == 0) {
        tie_x += 1;
        tie_y += 1;
      } else if (dx == 0) {
        tie_x += 1;
      } else if (dy == 0) {
        tie_y += 1;
      } else if ((dx > 0) == (dy > 0)) {
        concordant += 1;
      } else {
        discordant += 1;
      }
    }
  }
  double n0 = static_cast<double>(x.size()) * (x.size() - 1) / 2;
  return (concordant - discordant) / std::sqrt((n0 - tie_x) * (n0 - tie_y));
}

std::string source_text(const arxivroll::corpus::Article& article,
                        const arxivroll::scpgen::TestCase& tc) {
  std::string out;
  for (std::size_t p = tc.provenance.span_start; p < tc.provenance.span_end;
       ++p) {
    if (!out.empty()) out += ' ';
    out += article.paragraphs.at(p);
  }
  // Collapse whitespace runs.
  std::string norm;
  bool space = false;
  for (char c : out) {
    if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
      space = !norm.empty();
      continue;
    }
    if (space) norm += ' ';
    space = false;
    norm += c;
  }
  return norm;
}

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

int roman(const std::string& s) {
  static const char* kRoman[] = {"i", "ii", "iii", "iv"};
  for (int i = 0; i < 4; ++i) {
    if (s == kRoman[i]) return i;
  }
  return -1;
}

}  // namespace

std::string reconstruct(const arxivroll::scpgen::TestCase& tc) {
  const std::string& answer = tc.candidates.at(tc.correct_index);
  using arxivroll::TaskKind;
  switch (tc.task_kind) {
    case TaskKind::kSequencing: {
      std::map<char, std::string> segment;
      for (const auto& l : lines(tc.stem)) segment[l.at(1)] = l.substr(4);
      std::string out;
      for (char c : answer) {
        if (c == '-') continue;
        if (!out.empty()) out += ' ';
        out += segment.at(c);
      }
      return out;
    }
    case TaskKind::kCloze: {
      auto ls = lines(tc.stem);
      std::string text = ls.at(0);
      std::map<int, std::string> bank;
      for (std::size_t i = 1; i < ls.size(); ++i) {
        auto close = ls[i].find(')');
        bank[roman(ls[i].substr(1, close - 1))] = ls[i].substr(close + 2);
      }
      // "1→iii, 2→i, ..."
      std::istringstream in(answer);
      std::string part;
      while (std::getline(in, part, ',')) {
        while (!part.empty() && part[0] == ' ') part.erase(0, 1);
        auto arrow = part.find("→");
        std::string blank = "[BLANK-" + part.substr(0, arrow) + "]";
        std::string sentence = bank.at(roman(part.substr(arrow + 3)));
        text.replace(text.find(blank), blank.size(), sentence);
      }
      return text;
    }
    case TaskKind::kPrediction:
      break;
  }
  return tc.stem + " " + answer;
}

}  // namespace oracle

namespace support {

std::string make_tar(
    const std::vector<std::pair<std::string, std::string>>& members) {
  std::string out;
  for (const auto& [name, content] : members) {
    char header[512] = {};
    std::snprintf(header, 100, "%s", name.c_str());
    std::snprintf(header + 100, 8, "%07o", 0644);
    std::snprintf(header + 108, 8, "%07o", 0);
    std::snprintf(header + 116, 8, "%07o", 0);
    std::snprintf(header + 124, 12, "%011zo", content.size());
    std::snprintf(header + 136, 12, "%011o", 0);
    header[156] = '0';
    std::memcpy(header + 257, "ustar", 5);
    std::memcpy(header + 263, "00", 2);
    std::memset(header + 148, ' ', 8);
    unsigned sum = 0;
    for (unsigned char c : header) sum += c;
    std::snprintf(header + 148, 8, "%06o", sum);
    out.append(header, 512);
    out += content;
    out.append((512 - content.size() % 512) % 512, '\0');
  }
  out.append(1024, '\0');
  return out;
}

std::string gzip(const std::string& bytes) {
  z_stream zs{};
  deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
               Z_DEFAULT_STRATEGY);
  std::string out(deflateBound(&zs, bytes.size()) + 64, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  return out;
}

std::string fixture_path(const std::string& relative) {
  return std::string(ARXIVROLL_TEST_DIR) + "/fixtures/" + relative;
}

bool matches_golden(const std::string& name, const std::string& actual) {
  std::string path = std::string(ARXIVROLL_TEST_DIR) + "/golden/" + name;
  if (std::getenv("ARXIVROLL_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str() == actual;
}

TempDir::TempDir() {
  static std::mt19937_64 gen{std::random_device{}()};
  auto base = std::filesystem::temp_directory_path();
  for (;;) {
    auto p = base / ("arxivroll-test-" + std::to_string(gen()));
    if (std::filesystem::create_directory(p)) {
      path_ = p.string();
      return;
    }
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace support
