#include "arxivroll/harness/prompt.hpp"

#include <cctype>

namespace arxivroll::harness {

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::kA: return "A";
    case Answer::kB: return "B";
    case Answer::kC: return "C";
    case Answer::kD: return "D";
    case Answer::kNone: break;
  }
  return "none";
}

Answer answer_from_string(std::string_view s) {
  if (s == "none") return Answer::kNone;
  if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'D') {
    return answer_for_index(s[0] - 'A');
  }
  throw DomainError("invalid answer \"" + std::string(s) + "\"");
}

Answer answer_for_index(int index) {
  if (index < 0 || index > 3) return Answer::kNone;
  return static_cast<Answer>(index);
}

std::optional<int> answer_index(Answer a) {
  if (a == Answer::kNone) return std::nullopt;
  return static_cast<int>(a);
}

namespace {

std::string_view instruction(TaskKind t) {
  switch (t) {
    case TaskKind::kSequencing:
      return "The passage below, taken from a scientific article, has been "
             "split into four segments labeled (A) to (D) and shuffled. "
             "Choose the order of labels that restores the original passage.";
    case TaskKind::kCloze:
      return "Four sentences have been removed from the passage below, taken "
             "from a scientific article, and listed after it as (i) to (iv). "
             "Choose the assignment of sentences to blanks that restores the "
             "original passage.";
    case TaskKind::kPrediction:
      break;
  }
  return "Read the passage below, taken from a scientific article, and choose "
         "the sentence that comes next.";
}

bool is_word_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

bool letter(unsigned char c) {
  c = static_cast<unsigned char>(std::toupper(c));
  return c >= 'A' && c <= 'D';
}

Answer from_char(char c) {
  return answer_for_index(std::toupper(static_cast<unsigned char>(c)) - 'A');
}

bool bounded(std::string_view s, std::size_t i) {
  bool before = i == 0 || !is_word_char(s[i - 1]);
  bool after = i + 1 >= s.size() || !is_word_char(s[i + 1]);
  return before && after;
}

std::optional<Answer> rule_answer_is(std::string_view raw) {
  std::string lower = to_lower_ascii(raw);
  std::size_t pos = 0;
  while ((pos = lower.find("answer", pos)) != std::string::npos) {
    std::size_t i = pos + 6;
    pos = i;
    while (i < lower.size() && lower[i] == ' ') ++i;
    if (lower.compare(i, 2, "is") == 0 &&
        (i + 2 >= lower.size() || !is_word_char(lower[i + 2]))) {
      i += 2;
    } else if (i < lower.size() && lower[i] == ':') {
      ++i;
    } else {
      continue;
    }
    while (i < raw.size() && std::string_view(" \t\n:*\"'([{").find(raw[i]) !=
                                 std::string_view::npos) {
      ++i;
    }
    if (i >= raw.size() || !letter(raw[i]) || !bounded(raw, i)) continue;
    // A lowercase "a" followed by more words is the article, not a choice.
    bool lower_case = std::islower(static_cast<unsigned char>(raw[i]));
    if (lower_case && i + 2 < raw.size() && raw[i + 1] == ' ' &&
        std::isalpha(static_cast<unsigned char>(raw[i + 2]))) {
      continue;
    }
    return from_char(raw[i]);
  }
  return std::nullopt;
}

std::optional<Answer> rule_parenthesized(std::string_view raw) {
  for (std::size_t i = 0; i + 2 < raw.size(); ++i) {
    if (raw[i] == '(' && letter(raw[i + 1]) && raw[i + 2] == ')') {
      return from_char(raw[i + 1]);
    }
  }
  return std::nullopt;
}

std::optional<Answer> rule_first_token(std::string_view raw) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (letter(raw[i]) && bounded(raw, i)) return from_char(raw[i]);
  }
  return std::nullopt;
}

}  // namespace

std::string render_prompt(const scpgen::TestCase& tc) {
  std::string out(instruction(tc.task_kind));
  out += "\n\n";
  out += tc.stem;
  out += "\n\n";
  for (int k = 0; k < 4; ++k) {
    out += static_cast<char>('A' + k);
    out += ". ";
    out += tc.candidates[k];
    out += '\n';
  }
  out += "\nAnswer with a single letter (A, B, C, or D).";
  return out;
}

Answer extract_answer(std::string_view raw) {
  if (auto a = rule_answer_is(raw)) return *a;
  if (auto a = rule_parenthesized(raw)) return *a;
  if (auto a = rule_first_token(raw)) return *a;
  return Answer::kNone;
}

}  // namespace arxivroll::harness
