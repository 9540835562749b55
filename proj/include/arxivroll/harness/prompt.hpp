#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "arxivroll/scpgen/test_case.hpp"

namespace arxivroll::harness {

enum class Answer { kA, kB, kC, kD, kNone };

std::string_view to_string(Answer a);  // "A".."D", "none"
Answer answer_from_string(std::string_view s);  // throws DomainError
Answer answer_for_index(int index);
std::optional<int> answer_index(Answer a);

// Instruction line, blank line, stem, blank line, candidates "A." to "D.",
// blank line, closing line. No trailing newline.
std::string render_prompt(const scpgen::TestCase& tc);

// Exact-match letter extraction. Rules, first hit wins:
//   1. "answer is" / "answer:" then optional punctuation and a letter
//   2. a letter in parentheses, "(B)"
//   3. the first standalone A-D token, case-insensitive
Answer extract_answer(std::string_view raw);

}  // namespace arxivroll::harness
