#include "arxivroll/scpgen/sentences.hpp"

#include <cctype>

#include "arxivroll/common.hpp"

namespace arxivroll::scpgen {

namespace {

// Compared case-insensitively against the word that ends in the period.
constexpr std::string_view kAbbreviations[] = {
    "e.g.",  "i.e.",  "al.",   "fig.",  "figs.",   "eq.",
    "eqs.",  "sec.",  "secs.",  "ref.",  "refs.", "tab.",    "thm.",
    "def.",  "prop.", "lem.",   "cor.",  "ch.",   "no.",     "vs.",
    "cf.",   "etc.",  "resp.",  "approx.", "dr.", "mr.",     "mrs.",
    "ms.",   "prof.", "vol.",   "pp.",   "ed.",   "eds."};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

bool guarded(std::string_view text, std::size_t period) {
  // Start of the whitespace-delimited word containing the period.
  std::size_t start = period;
  while (start > 0 && !is_space(text[start - 1])) --start;
  std::string word = to_lower_ascii(text.substr(start, period - start + 1));
  while (!word.empty() && (word.front() == '(' || word.front() == '[' ||
                           word.front() == '"')) {
    word.erase(word.begin());
  }
  for (std::string_view abbr : kAbbreviations) {
    if (word == abbr) return true;
  }
  // Single initials such as "J." in "J. Smith".
  if (word.size() == 2 && std::isalpha(static_cast<unsigned char>(word[0]))) {
    return true;
  }
  return false;
}

bool opens_sentence(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return false;
  unsigned char c = static_cast<unsigned char>(text[pos]);
  if (std::isupper(c) || std::isdigit(c)) return true;
  if (c == '"' || c == '(' || c == '[') {
    return pos + 1 < text.size() &&
           (std::isupper(static_cast<unsigned char>(text[pos + 1])) ||
            std::isdigit(static_cast<unsigned char>(text[pos + 1])));
  }
  return text.substr(pos, kMathToken.size()) == kMathToken;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view paragraph) {
  std::string text = normalize_whitespace(paragraph);
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t end = i + 1;
    while (end < text.size() &&
           (text[end] == '"' || text[end] == ')' || text[end] == ']' ||
            text[end] == '\'')) {
      ++end;
    }
    if (end >= text.size() || text[end] != ' ') continue;
    if (!opens_sentence(text, end + 1)) continue;
    if (c == '.' && guarded(text, i)) continue;
    out.push_back(text.substr(begin, end - begin));
    begin = end + 1;
    i = end;
  }
  if (begin < text.size()) out.push_back(text.substr(begin));
  return out;
}

}  // namespace arxivroll::scpgen
