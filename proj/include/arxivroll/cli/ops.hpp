#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arxivroll/harness/model.hpp"
#include "arxivroll/metrics/correlation.hpp"
#include "arxivroll/metrics/rugged.hpp"
#include "arxivroll/scpgen/fragment.hpp"

namespace arxivroll::cli {

// Shared configuration file (key-value format, see KvConfig):
//
//   corpus_root = "corpus"
//   results_root = "results"
//   registry_path = "registry.log"
//   rs_root = "rs"
//   log_level = "info"          # quiet | info
//   [fragment]                  # FragmentConfig fields
//   [model]                     # ModelConfig fields, [model.retry] too
//
// Relative paths resolve against the file's directory. Paths left unset
// must come from flags.
struct ToolConfig {
  std::filesystem::path corpus_root;
  std::filesystem::path results_root;
  std::filesystem::path registry_path;
  std::filesystem::path rs_root;
  std::string log_level = "info";
  scpgen::FragmentConfig fragment;
  harness::ModelConfig model;
};

ToolConfig load_tool_config(const std::filesystem::path& path);
void apply_fragment_config(scpgen::FragmentConfig& c, const KvConfig& kv,
                           const std::string& prefix);
std::string default_config_text();

struct StabilityRequest {
  Domain domain = Domain::kCs;
  TaskKind task = TaskKind::kSequencing;
  std::vector<std::uint64_t> seeds;
  std::size_t size = 500;
  scpgen::FragmentConfig fragment;
  std::string period_label;
  std::string created;
  harness::ModelConfig model;
  const std::atomic<bool>* stop = nullptr;
};

struct StabilityReport {
  Domain domain = Domain::kCs;
  TaskKind task = TaskKind::kSequencing;
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> n_items;
  std::vector<double> accuracies;  // accuracy_pct per seed
  metrics::StabilityStats stats;
  std::string model_id;
};

// Regenerates the benchmark once per seed and scores it. Throws
// PreconditionError for fewer than 2 seeds.
StabilityReport stability_study(const std::vector<corpus::Article>& articles,
                                const StabilityRequest& request);

void to_json(nlohmann::json& j, const StabilityReport& r);

// model_id -> accuracy. Reads a JSON object of numbers, a leaderboard JSON
// document (mean_accuracy per row) or a two-column CSV with a header line.
using ScoreTable = std::map<std::string, double>;
ScoreTable load_score_table(const std::filesystem::path& path);

struct CorrelationRow {
  std::size_t n_models = 0;
  double pearson = 0.0;
  double spearman = 0.0;
  double kendall = 0.0;
};

// Aligns by model id. Throws DomainError listing the symmetric difference
// when the model sets differ, PreconditionError for fewer than 3 models.
CorrelationRow correlate_tables(const ScoreTable& a, const ScoreTable& b);

// Header fields of a benchmark file, without parsing the items.
struct BenchmarkInfo {
  std::string benchmark_id;
  Domain domain = Domain::kCs;
  TaskKind task = TaskKind::kSequencing;
};
BenchmarkInfo read_benchmark_info(const std::filesystem::path& path);

// Pairs public and private benchmarks of the same (domain, task kind), in
// id order; leftovers stay unmatched. Pair ids are "<domain>-<letter>",
// with a numeric suffix from the second pair of a kind on.
metrics::PairConfig make_pair_config(const std::vector<BenchmarkInfo>& pub,
                                     const std::vector<BenchmarkInfo>& priv);

}  // namespace arxivroll::cli
