#include "arxivroll/corpus/extract.hpp"

#include <cctype>
#include <set>

#include "arxivroll/common.hpp"

namespace arxivroll::corpus {

namespace {

const std::set<std::string, std::less<>> kDroppedEnvs = {
    "table",       "figure",    "tabular",   "tabularx", "longtable",
    "algorithm",   "algorithmic", "lstlisting", "verbatim", "thebibliography",
    "tikzpicture", "wrapfigure", "subfigure", "minted",   "sidewaystable"};

const std::set<std::string, std::less<>> kMathEnvs = {
    "equation", "align",   "gather",      "multline", "eqnarray",
    "math",     "flalign", "alignat",     "dmath",    "displaymath",
    "subequations", "IEEEeqnarray"};

// Commands removed together with every argument group that follows them.
const std::set<std::string, std::less<>> kDroppedCommands = {
    "cite",        "citep",        "citet",          "citealp",
    "citeauthor",  "citeyear",     "ref",            "eqref",
    "autoref",     "cref",         "Cref",           "pageref",
    "label",       "footnote",     "footnotemark",   "footnotetext",
    "includegraphics", "bibliography", "bibliographystyle", "vspace",
    "hspace",      "url",          "thanks",         "input",
    "include",     "newcommand",   "renewcommand",   "providecommand",
    "DeclareMathOperator", "usepackage", "documentclass", "newtheorem",
    "setlength",   "addtolength",  "bibitem",        "affiliation",
    "email",       "address",      "keywords",       "setcounter"};

// Structural commands whose argument is a heading: dropped, and they end
// the current paragraph.
const std::set<std::string, std::less<>> kHeadingCommands = {
    "part",      "chapter",       "section", "subsection", "subsubsection",
    "paragraph", "subparagraph",  "title",   "author",     "date",
    "caption",   "maketitle"};

std::string strip_star(std::string_view name) {
  std::string n(name);
  if (!n.empty() && n.back() == '*') n.pop_back();
  return n;
}

bool escaped_at(std::string_view s, std::size_t pos) {
  std::size_t n = 0;
  while (pos > n && s[pos - n - 1] == '\\') ++n;
  return n % 2 == 1;
}

std::string strip_comments(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t nl = s.find('\n', pos);
    bool has_nl = nl != std::string_view::npos;
    std::string_view line = s.substr(pos, (has_nl ? nl : s.size()) - pos);
    std::size_t cut = std::string_view::npos;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '%' && !escaped_at(line, i)) {
        cut = i;
        break;
      }
    }
    if (cut == std::string_view::npos) {
      out += line;
      if (has_nl) out += '\n';
    } else if (!trim(line.substr(0, cut)).empty()) {
      out += line.substr(0, cut);
      if (has_nl) out += '\n';
    }
    // A comment-only line disappears entirely so it cannot split a paragraph.
    pos = has_nl ? nl + 1 : s.size();
  }
  return out;
}

std::string_view document_body(std::string_view s) {
  constexpr std::string_view kBegin = "\\begin{document}";
  constexpr std::string_view kEnd = "\\end{document}";
  std::size_t b = s.find(kBegin);
  if (b != std::string_view::npos) s = s.substr(b + kBegin.size());
  std::size_t e = s.find(kEnd);
  if (e != std::string_view::npos) s = s.substr(0, e);
  return s;
}

class LatexScanner {
 public:
  LatexScanner(std::string_view src, std::vector<std::string>& warnings)
      : s_(src), warnings_(warnings) {}

  std::string run() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '\\') {
        control();
      } else if (c == '$') {
        dollar_math();
      } else if (c == '{' || c == '}') {
        ++i_;
      } else if (c == '~') {
        out_ += ' ';
        ++i_;
      } else if (c == '`' && peek(1) == '`') {
        out_ += '"';
        i_ += 2;
      } else if (c == '\'' && peek(1) == '\'') {
        out_ += '"';
        i_ += 2;
      } else {
        out_ += c;
        ++i_;
      }
    }
    return std::move(out_);
  }

 private:
  char peek(std::size_t k) const {
    return i_ + k < s_.size() ? s_[i_ + k] : '\0';
  }

  // Index of the blank line ending the paragraph that contains `from`.
  std::size_t paragraph_end(std::size_t from) const {
    std::size_t pos = from;
    while (pos < s_.size()) {
      std::size_t nl = s_.find('\n', pos);
      if (nl == std::string_view::npos) return s_.size();
      std::size_t k = nl + 1;
      while (k < s_.size() && (s_[k] == ' ' || s_[k] == '\t' || s_[k] == '\r')) {
        ++k;
      }
      if (k >= s_.size() || s_[k] == '\n') return nl;
      pos = nl + 1;
    }
    return s_.size();
  }

  void emit_math() { out_ += kMathToken; }

  void unbalanced(std::string_view what) {
    warnings_.push_back("unbalanced " + std::string(what) + " near byte " +
                        std::to_string(i_));
    emit_math();
    i_ = paragraph_end(i_);
  }

  // Looks for an unescaped `close` in [from, limit).
  std::size_t find_closing(std::string_view close, std::size_t from,
                           std::size_t limit) const {
    std::size_t pos = from;
    while (pos < limit) {
      std::size_t f = s_.find(close, pos);
      if (f == std::string_view::npos || f + close.size() > limit) {
        return std::string_view::npos;
      }
      if (!escaped_at(s_, f)) return f;
      pos = f + 1;
    }
    return std::string_view::npos;
  }

  void dollar_math() {
    std::size_t limit = paragraph_end(i_);
    if (peek(1) == '$') {
      std::size_t close = find_closing("$$", i_ + 2, limit);
      if (close == std::string_view::npos) return unbalanced("$$");
      emit_math();
      i_ = close + 2;
      return;
    }
    std::size_t close = find_closing("$", i_ + 1, limit);
    if (close == std::string_view::npos) return unbalanced("$");
    emit_math();
    i_ = close + 1;
  }

  void delimited_math(std::string_view close_delim) {
    std::size_t limit = paragraph_end(i_);
    std::size_t close = s_.find(close_delim, i_ + 2);
    if (close == std::string_view::npos || close >= limit) {
      return unbalanced(std::string("\\") + s_[i_ + 1]);
    }
    emit_math();
    i_ = close + close_delim.size();
  }

  std::string read_name() {
    std::size_t start = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) {
      ++i_;
    }
    if (i_ < s_.size() && s_[i_] == '*') ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  // Skips a balanced {..} or [..] group starting at i_, if present.
  bool skip_group() {
    std::size_t k = i_;
    while (k < s_.size() && (s_[k] == ' ' || s_[k] == '\t')) ++k;
    if (k >= s_.size() || (s_[k] != '{' && s_[k] != '[')) return false;
    char open = s_[k];
    char close = open == '{' ? '}' : ']';
    int depth = 0;
    for (std::size_t j = k; j < s_.size(); ++j) {
      if (s_[j] == '\\') {
        ++j;
        continue;
      }
      if (s_[j] == open) ++depth;
      if (s_[j] == close && --depth == 0) {
        i_ = j + 1;
        return true;
      }
    }
    i_ = s_.size();
    return true;
  }

  void skip_all_groups() {
    while (skip_group()) {
    }
  }

  std::string read_env_name() {
    std::size_t k = i_;
    while (k < s_.size() && s_[k] == ' ') ++k;
    if (k >= s_.size() || s_[k] != '{') return {};
    std::size_t close = s_.find('}', k);
    if (close == std::string_view::npos) return {};
    i_ = close + 1;
    return std::string(s_.substr(k + 1, close - k - 1));
  }

  // Position just past the \end{name} matching an already consumed
  // \begin{name}, or npos.
  std::size_t find_env_end(const std::string& name) const {
    const std::string open = "\\begin{" + name + "}";
    const std::string close = "\\end{" + name + "}";
    int depth = 1;
    std::size_t pos = i_;
    while (true) {
      std::size_t c = s_.find(close, pos);
      if (c == std::string_view::npos) return c;
      std::size_t o = s_.find(open, pos);
      if (o != std::string_view::npos && o < c) {
        ++depth;
        pos = o + open.size();
        continue;
      }
      if (--depth == 0) return c + close.size();
      pos = c + close.size();
    }
  }

  void begin_environment() {
    std::size_t at = i_;
    std::string name = read_env_name();
    std::string base = strip_star(name);
    if (kMathEnvs.count(base)) {
      std::size_t end = find_env_end(name);
      if (end == std::string_view::npos) {
        i_ = at;
        return unbalanced("\\begin{" + name + "}");
      }
      emit_math();
      i_ = end;
    } else if (kDroppedEnvs.count(base)) {
      std::size_t end = find_env_end(name);
      if (end == std::string_view::npos) {
        warnings_.push_back("unterminated environment " + name +
                            " dropped to end of input");
        i_ = s_.size();
        return;
      }
      out_ += "\n\n";
      i_ = end;
    } else {
      out_ += ' ';
    }
  }

  void control() {
    char next = peek(1);
    if (std::isalpha(static_cast<unsigned char>(next))) {
      ++i_;
      std::string name = read_name();
      if (name == "begin") return begin_environment();
      if (name == "end") {
        read_env_name();
        out_ += ' ';
        return;
      }
      std::string base = strip_star(name);
      if (kHeadingCommands.count(base)) {
        skip_all_groups();
        out_ += "\n\n";
      } else if (kDroppedCommands.count(base)) {
        skip_all_groups();
      } else if (base == "href") {
        skip_group();  // keep the link text that follows
      } else if (base == "item") {
        out_ += ' ';
      }
      // Any other command vanishes and its arguments stay as text.
      return;
    }
    switch (next) {
      case '(':
        return delimited_math("\\)");
      case '[':
        return delimited_math("\\]");
      case '%': case '&': case '_': case '#': case '$': case '{': case '}':
        out_ += next;
        i_ += 2;
        return;
      case '\\':
        out_ += ' ';
        i_ += 2;
        if (peek(0) == '[') skip_group();
        return;
      case ',': case ';': case ':': case '!': case ' ': case '\n':
        out_ += ' ';
        i_ += 2;
        return;
      default:
        // Accents and other control symbols: drop the symbol, keep the
        // accented letter that follows.
        i_ += next == '\0' ? 1 : 2;
        return;
    }
  }

  std::string_view s_;
  std::vector<std::string>& warnings_;
  std::size_t i_ = 0;
  std::string out_;
};

// Removes spaces left before closing punctuation when a citation or
// reference was dropped, and empty parentheses.
std::string tidy_punctuation(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == ' ' && i + 1 < s.size() &&
        std::string_view(".,;:!?)").find(s[i + 1]) != std::string_view::npos) {
      continue;
    }
    if (c == ' ' && !out.empty() && out.back() == '(') continue;
    if (c == ')' && !out.empty() && out.back() == '(') {
      out.pop_back();
      continue;
    }
    out += c;
  }
  return normalize_whitespace(out);
}

std::vector<std::string> split_blank_lines(std::string_view s) {
  std::vector<std::string> paras;
  std::string current;
  auto flush = [&] {
    // Twice: removing "()" can expose a space before punctuation.
    std::string p = tidy_punctuation(tidy_punctuation(current));
    if (!p.empty()) paras.push_back(std::move(p));
    current.clear();
  };
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t nl = s.find('\n', pos);
    if (nl == std::string_view::npos) nl = s.size();
    std::string_view line = s.substr(pos, nl - pos);
    if (trim(line).empty()) {
      flush();
    } else {
      current += line;
      current += ' ';
    }
    pos = nl + 1;
  }
  flush();
  return paras;
}

std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> paras;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t nl = s.find('\n', pos);
    if (nl == std::string_view::npos) nl = s.size();
    std::string p = normalize_whitespace(s.substr(pos, nl - pos));
    if (!p.empty()) paras.push_back(std::move(p));
    pos = nl + 1;
  }
  return paras;
}

// Number of bytes in a valid UTF-8 sequence starting at s[i], or 0.
std::size_t valid_utf8_length(std::string_view s, std::size_t i) {
  auto byte = [&](std::size_t k) -> unsigned {
    return static_cast<unsigned char>(s[k]);
  };
  unsigned b0 = byte(i);
  if (b0 < 0x80) return 1;
  std::size_t len;
  unsigned min_second = 0x80, max_second = 0xBF;
  if (b0 >= 0xC2 && b0 <= 0xDF) {
    len = 2;
  } else if (b0 >= 0xE0 && b0 <= 0xEF) {
    len = 3;
    if (b0 == 0xE0) min_second = 0xA0;  // overlong
    if (b0 == 0xED) max_second = 0x9F;  // surrogates
  } else if (b0 >= 0xF0 && b0 <= 0xF4) {
    len = 4;
    if (b0 == 0xF0) min_second = 0x90;
    if (b0 == 0xF4) max_second = 0x8F;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  if (byte(i + 1) < min_second || byte(i + 1) > max_second) return 0;
  for (std::size_t k = 2; k < len; ++k) {
    if (byte(i + k) < 0x80 || byte(i + k) > 0xBF) return 0;
  }
  return len;
}

}  // namespace

std::string decode_utf8_lossy(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    std::size_t len = valid_utf8_length(bytes, i);
    if (len == 0) {
      out += "\xEF\xBF\xBD";
      ++i;
    } else {
      out.append(bytes.substr(i, len));
      i += len;
    }
  }
  return out;
}

Extraction extract_text(std::string_view raw, SourceFormat format) {
  Extraction result;
  std::string text = decode_utf8_lossy(raw);
  result.raw_char_count = text.size();
  std::string unix_text;
  unix_text.reserve(text.size());
  for (char c : text) {
    if (c != '\r') unix_text += c;
  }
  if (format == SourceFormat::kPlain) {
    result.paragraphs = split_lines(unix_text);
    return result;
  }
  std::string no_comments = strip_comments(unix_text);
  LatexScanner scanner(document_body(no_comments), result.warnings);
  result.paragraphs = split_blank_lines(scanner.run());
  return result;
}

}  // namespace arxivroll::corpus
