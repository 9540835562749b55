#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace arxivroll::scpgen {

// Rule-based splitter: a sentence ends at '.', '!' or '?' (optionally
// followed by closing quotes or brackets) when whitespace and then an
// uppercase letter, digit, opening quote/bracket or the math token follow.
// A period closing a guarded abbreviation ("e.g.", "et al.", "Fig.", "Eq.",
// single initials, ...) never ends a sentence.
//
// Sentences come back trimmed and non-empty; joining them with single spaces
// gives the input with whitespace normalized.
std::vector<std::string> split_sentences(std::string_view paragraph);

}  // namespace arxivroll::scpgen
