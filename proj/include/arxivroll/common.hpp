#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace arxivroll {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Bumped whenever sentence splitting, sampling, case layout or the prompt
// template changes. Recorded in every benchmark and test case.
inline constexpr std::string_view kGeneratorVersion = "scp-1.0";

// The single token that stands in for any stretch of mathematics.
inline constexpr std::string_view kMathToken = "⟨MATH⟩";

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input from the user or a file: exit code 1 at the CLI.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConflictError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IntegrityError : public DomainError {
 public:
  using DomainError::DomainError;
};

class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : DomainError(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Transport-level failure that may succeed when retried.
class NetworkError : public Error {
 public:
  NetworkError(const std::string& what, bool retryable)
      : Error(what), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

// ---------------------------------------------------------------------------
// Domains

enum class Domain { kCs, kEcon, kEess, kMath, kPhysics, kQBio, kQFin, kStat };

inline constexpr std::array<Domain, 8> kAllDomains = {
    Domain::kCs,      Domain::kEcon, Domain::kEess, Domain::kMath,
    Domain::kPhysics, Domain::kQBio, Domain::kQFin, Domain::kStat};

std::string_view to_string(Domain d);
std::optional<Domain> parse_domain(std::string_view code);
Domain domain_from_string(std::string_view code);  // throws DomainError

// ---------------------------------------------------------------------------
// Task kinds

enum class TaskKind { kSequencing, kCloze, kPrediction };

std::string_view to_string(TaskKind t);
// Accepts the full name or the one-letter form (s, c, p).
std::optional<TaskKind> parse_task_kind(std::string_view s);
TaskKind task_kind_from_string(std::string_view s);  // throws DomainError
char task_letter(TaskKind t);

// ---------------------------------------------------------------------------
// Calendar dates (proleptic Gregorian, no time zone).

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;
  std::string str() const;  // YYYY-MM-DD
};

std::optional<Date> parse_date(std::string_view s);  // YYYY-MM-DD[...]
Date date_from_string(std::string_view s);           // throws DomainError

struct DateRange {
  Date start;
  Date end;
  bool valid() const { return start <= end; }
  bool contains(const Date& d) const { return start <= d && d <= end; }
};

// ISO-8601 UTC timestamp of the current wall clock, second resolution.
std::string utc_now_iso();

// ---------------------------------------------------------------------------
// Text helpers shared by the extraction and generation code.

std::string trim(std::string_view s);
// Collapses runs of ASCII whitespace to a single space and trims the ends.
std::string normalize_whitespace(std::string_view s);
std::size_t count_words(std::string_view s);
std::string to_lower_ascii(std::string_view s);
std::string join(const auto& parts, std::string_view sep) {
  std::string out;
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out += sep;
    out += p;
    first = false;
  }
  return out;
}

}  // namespace arxivroll
