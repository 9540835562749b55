#include "arxivroll/kvconfig.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "arxivroll/common.hpp"

namespace arxivroll {

namespace {

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t base)
      : s_(line), base_(base) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end_or_comment() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("config: " + what, base_ + pos_);
  }

  std::string parse_string() {
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("dangling escape");
        char e = s_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  KvConfig::Value parse_value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("missing value");
    char c = s_[pos_];
    if (c == '"') return parse_string();
    if (c == '[') {
      ++pos_;
      std::vector<std::string> items;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ']') {
        ++pos_;
        return items;
      }
      for (;;) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != '"') fail("arrays hold strings");
        items.push_back(parse_string());
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          return items;
        }
        fail("expected ',' or ']'");
      }
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '#' && s_[pos_] != ' ' &&
           s_[pos_] != '\t') {
      ++pos_;
    }
    std::string_view tok = s_.substr(start, pos_ - start);
    if (tok == "true") return true;
    if (tok == "false") return false;
    std::string clean;
    for (char ch : tok) {
      if (ch != '_') clean += ch;
    }
    std::int64_t iv = 0;
    auto [ip, iec] =
        std::from_chars(clean.data(), clean.data() + clean.size(), iv);
    if (iec == std::errc() && ip == clean.data() + clean.size()) return iv;
    double dv = 0;
    auto [dp, dec] =
        std::from_chars(clean.data(), clean.data() + clean.size(), dv);
    if (dec == std::errc() && dp == clean.data() + clean.size()) return dv;
    pos_ = start;
    fail("cannot parse value '" + std::string(tok) + "'");
  }

  std::string parse_key() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
            s_[pos_] == '_' || s_[pos_] == '-' || s_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected key");
    return std::string(s_.substr(start, pos_ - start));
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

 private:
  std::string_view s_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace

KvConfig KvConfig::parse(std::string_view text) {
  KvConfig cfg;
  std::string section;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(offset, nl - offset);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineParser p(line, offset);
    if (!p.at_end_or_comment()) {
      if (p.consume('[')) {
        section = p.parse_key();
        if (!p.consume(']')) p.fail("expected ']'");
      } else {
        std::string key = p.parse_key();
        if (!p.consume('=')) p.fail("expected '='");
        Value v = p.parse_value();
        std::string full = section.empty() ? key : section + "." + key;
        if (cfg.values_.count(full)) p.fail("duplicate key '" + full + "'");
        cfg.values_.emplace(std::move(full), std::move(v));
      }
      if (!p.at_end_or_comment()) p.fail("trailing characters");
    }
    offset = nl + 1;
  }
  return cfg;
}

KvConfig KvConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::optional<std::string> KvConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (auto* s = std::get_if<std::string>(&it->second)) return *s;
  throw DomainError("config key '" + key + "' must be a string");
}

std::optional<std::int64_t> KvConfig::get_int(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (auto* v = std::get_if<std::int64_t>(&it->second)) return *v;
  throw DomainError("config key '" + key + "' must be an integer");
}

std::optional<double> KvConfig::get_double(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (auto* v = std::get_if<double>(&it->second)) return *v;
  if (auto* v = std::get_if<std::int64_t>(&it->second)) {
    return static_cast<double>(*v);
  }
  throw DomainError("config key '" + key + "' must be a number");
}

std::optional<bool> KvConfig::get_bool(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (auto* v = std::get_if<bool>(&it->second)) return *v;
  throw DomainError("config key '" + key + "' must be true or false");
}

std::optional<std::vector<std::string>> KvConfig::get_strings(
    const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (auto* v = std::get_if<std::vector<std::string>>(&it->second)) return *v;
  throw DomainError("config key '" + key + "' must be an array of strings");
}

}  // namespace arxivroll
