#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace arxivroll::corpus {

enum class SourceFormat { kLatex, kPlain };

struct Extraction {
  std::vector<std::string> paragraphs;
  std::size_t raw_char_count = 0;
  // Recoverable problems, e.g. an unbalanced math delimiter.
  std::vector<std::string> warnings;
};

// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string decode_utf8_lossy(std::string_view bytes);

// Turns a LaTeX or plain-text source into clean paragraphs.
//
// LaTeX: comments are stripped; inline math ($..$, \(..\)), display math
// ($$..$$, \[..\]) and equation-like environments each become one
// kMathToken; table, figure and similar float environments are removed;
// markup commands are reduced to their text. Paragraphs are separated by
// blank lines.
//
// Plain: every run of newlines separates paragraphs.
//
// An unbalanced math delimiter turns the rest of its paragraph into math and
// adds a warning; extraction never fails.
Extraction extract_text(std::string_view raw, SourceFormat format);

}  // namespace arxivroll::corpus
