#include "arxivroll/common.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>

namespace arxivroll {

namespace {

constexpr std::array<std::string_view, 8> kDomainCodes = {
    "cs", "econ", "eess", "math", "physics", "q-bio", "q-fin", "stat"};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

int days_in_month(int y, int m) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30,
                                  31, 31, 30, 31, 30, 31};
  if (m == 2 && ((y % 4 == 0 && y % 100 != 0) || y % 400 == 0)) return 29;
  return kDays[m - 1];
}

}  // namespace

std::string_view to_string(Domain d) {
  return kDomainCodes[static_cast<std::size_t>(d)];
}

std::optional<Domain> parse_domain(std::string_view code) {
  for (std::size_t i = 0; i < kDomainCodes.size(); ++i) {
    if (kDomainCodes[i] == code) return static_cast<Domain>(i);
  }
  return std::nullopt;
}

Domain domain_from_string(std::string_view code) {
  auto d = parse_domain(code);
  if (!d) throw DomainError("unknown domain code '" + std::string(code) + "'");
  return *d;
}

std::string_view to_string(TaskKind t) {
  switch (t) {
    case TaskKind::kSequencing:
      return "sequencing";
    case TaskKind::kCloze:
      return "cloze";
    case TaskKind::kPrediction:
      return "prediction";
  }
  return "sequencing";
}

char task_letter(TaskKind t) {
  return static_cast<char>(std::toupper(to_string(t)[0]));
}

std::optional<TaskKind> parse_task_kind(std::string_view s) {
  if (s == "s" || s == "S" || s == "sequencing") return TaskKind::kSequencing;
  if (s == "c" || s == "C" || s == "cloze") return TaskKind::kCloze;
  if (s == "p" || s == "P" || s == "prediction") return TaskKind::kPrediction;
  return std::nullopt;
}

TaskKind task_kind_from_string(std::string_view s) {
  auto t = parse_task_kind(s);
  if (!t) throw DomainError("unknown task kind '" + std::string(s) + "'");
  return *t;
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::optional<Date> parse_date(std::string_view s) {
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  auto num = [&](std::size_t pos, std::size_t len) -> int {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return -1;
      v = v * 10 + (s[i] - '0');
    }
    return v;
  };
  Date d{num(0, 4), num(5, 2), num(8, 2)};
  if (d.year < 0 || d.month < 1 || d.month > 12 || d.day < 1 ||
      d.day > days_in_month(d.year, d.month)) {
    return std::nullopt;
  }
  return d;
}

Date date_from_string(std::string_view s) {
  auto d = parse_date(s);
  if (!d) throw DomainError("invalid date '" + std::string(s) + "'");
  return *d;
}

std::string utc_now_iso() {
  std::time_t t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string normalize_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::size_t count_words(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : s) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace arxivroll
