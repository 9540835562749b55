#pragma once

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

#include "arxivroll/harness/model.hpp"
#include "arxivroll/harness/prompt.hpp"

namespace arxivroll::harness {

inline constexpr std::string_view kExpiredRerunTag = "expired-rerun";

struct ItemResult {
  std::string case_id;
  std::string raw_output;
  Answer extracted = Answer::kNone;
  bool correct = false;
  double latency_ms = 0.0;
  bool failed = false;  // transport failure after all retries
  std::string error;

  bool operator==(const ItemResult&) const = default;
};

struct EvalRun {
  std::string model_id;
  std::string benchmark_id;
  std::string tag;  // empty, or kExpiredRerunTag
  bool interrupted = false;
  // Echo of the benchmark under test.
  std::string period_label;
  Domain domain = Domain::kCs;
  TaskKind task_kind = TaskKind::kSequencing;
  std::uint64_t seed = 0;
  std::string generator_version;
  ModelConfig model_config;
  std::vector<ItemResult> items;  // ordered by case_id
  std::size_t n = 0;
  std::size_t n_correct = 0;
  std::size_t n_failed = 0;
  double accuracy_pct = 0.0;
  double se_pct = 0.0;

  bool operator==(const EvalRun&) const = default;
};

// 100 * sqrt(p(1-p)/n) with p = n_correct/n.
double se_pct(std::size_t n_correct, std::size_t n);

// Recomputes n, n_correct, n_failed, accuracy_pct and se_pct from items.
void summarize(EvalRun& run);

struct ScoreOptions {
  const std::atomic<bool>* stop = nullptr;  // checked before each item
  Sleeper sleep = real_sleep;
  bool record_latency = true;
  std::string tag;
};

// Queries every item with up to config.max_in_flight requests in flight.
// Transport failures count as incorrect and are flagged. Throws
// PreconditionError for an empty benchmark, AuthError when credentials are
// rejected, and DomainError when more than half of the items failed. If
// `stop` fires, the completed items are returned with interrupted = true.
EvalRun score_benchmark(const scpgen::Benchmark& bench,
                        const ModelConfig& config, ModelClient& client,
                        const ScoreOptions& options = {});

void to_json(nlohmann::json& j, const ItemResult& r);
void from_json(const nlohmann::json& j, ItemResult& r);
// Adds tool_version and config_digest alongside the run fields.
void to_json(nlohmann::json& j, const EvalRun& run);
// Throws IntegrityError when the stored aggregates disagree with the items.
void from_json(const nlohmann::json& j, EvalRun& run);

// <results_root>/<model_id>/<benchmark_id>.json; '/' in the model id
// becomes '_'.
std::filesystem::path run_path(const std::filesystem::path& results_root,
                               const std::string& model_id,
                               const std::string& benchmark_id);
void write_eval_run(const EvalRun& run, const std::filesystem::path& path);
EvalRun read_eval_run(const std::filesystem::path& path);

}  // namespace arxivroll::harness
