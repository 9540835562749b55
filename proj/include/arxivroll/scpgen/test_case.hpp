#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "arxivroll/common.hpp"
#include "arxivroll/scpgen/fragment.hpp"
#include "json.hpp"

namespace arxivroll::scpgen {

struct Provenance {
  std::string article_id;
  std::uint64_t seed = 0;
  std::string generator_version;
  std::size_t span_start = 0;
  std::size_t span_end = 0;

  bool operator==(const Provenance&) const = default;
};

// One four-candidate selection item.
struct TestCase {
  std::string case_id;
  TaskKind task_kind = TaskKind::kSequencing;
  std::string stem;
  std::array<std::string, 4> candidates;
  int correct_index = 0;
  Domain domain = Domain::kCs;
  Provenance provenance;

  bool operator==(const TestCase&) const = default;
};

// Throws DomainError if the case breaks a structural invariant: index range,
// distinct candidates, or leftover template markers.
void validate(const TestCase& tc);

// Stable id from (article_id, task_kind, seed, paragraph span).
std::string make_case_id(const std::string& article_id, TaskKind task,
                         std::uint64_t seed, std::size_t span_start,
                         std::size_t span_end);

enum class BenchmarkStatus { kPrivate, kExpired };
std::string_view to_string(BenchmarkStatus s);
BenchmarkStatus benchmark_status_from_string(std::string_view s);

struct Benchmark {
  std::string benchmark_id;
  std::string period_label;
  Domain domain = Domain::kCs;
  TaskKind task_kind = TaskKind::kSequencing;
  std::uint64_t seed = 0;
  std::vector<TestCase> items;
  BenchmarkStatus status = BenchmarkStatus::kPrivate;
  std::string created;
  std::string generator_version;
  std::string tool_version;
  FragmentConfig config;

  bool operator==(const Benchmark&) const = default;
};

// Stable id from (period_label, domain, task_kind, seed, generator_version).
std::string make_benchmark_id(const std::string& period_label, Domain domain,
                              TaskKind task, std::uint64_t seed,
                              std::string_view generator_version);

void to_json(nlohmann::json& j, const TestCase& tc);
void from_json(const nlohmann::json& j, TestCase& tc);

// Header line: every Benchmark field except the items, plus n_items and the
// digest of the fragment configuration.
nlohmann::json benchmark_header(const Benchmark& b);

// JSONL: header line, then one TestCase per line.
std::string to_jsonl(const Benchmark& b);
Benchmark from_jsonl(std::string_view text);

void write_benchmark(const Benchmark& b, const std::filesystem::path& path);
Benchmark read_benchmark(const std::filesystem::path& path);

}  // namespace arxivroll::scpgen
