#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arxivroll/common.hpp"
#include "json.hpp"

namespace arxivroll::metrics {

enum class Visibility { kPublic, kPrivate };

struct BenchmarkRef {
  std::string id;
  Visibility visibility = Visibility::kPrivate;
  std::string pair_id;  // empty when unmatched
};

// Model x benchmark accuracies as fractions in [0, 1]. Cells may be absent;
// a metric fails on an absent cell it needs.
class PerfTable {
 public:
  PerfTable(std::vector<std::string> models,
            std::vector<BenchmarkRef> benchmarks);

  void set(const std::string& model, const std::string& benchmark,
           double score);
  std::optional<double> get(const std::string& model,
                            const std::string& benchmark) const;
  // Throws DomainError when the cell is absent.
  double at(const std::string& model, const std::string& benchmark) const;

  bool has_model(const std::string& model) const;
  const std::vector<std::string>& models() const { return models_; }
  const std::vector<BenchmarkRef>& benchmarks() const { return benchmarks_; }

  struct Pair {
    std::string pair_id;
    std::string public_id;
    std::string private_id;
  };
  std::vector<Pair> pairs() const;  // ordered by pair_id
  std::vector<std::string> unmatched(Visibility v) const;
  // Paired and unmatched private benchmarks.
  std::vector<std::string> all_private() const;

  // Copy with every public/private tag swapped.
  PerfTable swapped() const;

 private:
  std::vector<std::string> models_;
  std::vector<BenchmarkRef> benchmarks_;
  std::map<std::pair<std::string, std::string>, double> scores_;
};

struct Rs1Result {
  double value = 0.0;
  std::vector<std::string> warnings;  // absent groups, zero denominators
};

// (2/N_p) * sum over pairs of (Mp - Mc)/(Mp + Mc), plus
// 2 * (avg unmatched public - avg unmatched private) / (their sum).
// A term whose inputs are missing or whose denominator is zero contributes 0
// and adds a warning. Needs at least one pair, or unmatched benchmarks on
// both sides (PreconditionError).
Rs1Result rs1_absolute(const PerfTable& table, const std::string& model);

// Per model: mean over pairs of (rank on private - rank on public), ranks
// taken among `models` by descending score with ties averaged. Positive
// means the model ranks worse on private benchmarks.
std::map<std::string, double> rs1_relative(
    const PerfTable& table, const std::vector<std::string>& models);

struct Rs2Result {
  double rs2 = 0.0;                     // population std of private scores
  std::optional<double> rs2_normalized;  // rs2 / mean; absent when mean = 0
};

// Needs at least 2 private benchmarks.
Rs2Result rs2(const PerfTable& table, const std::string& model);

// Pair configuration file:
//   {"pairs": {"<pair_id>": {"public": "<benchmark_id>",
//                             "private": "<benchmark_id>"}},
//    "unmatched_public": [...], "unmatched_private": [...]}
struct PairConfig {
  std::map<std::string, std::pair<std::string, std::string>> pairs;
  std::vector<std::string> unmatched_public;
  std::vector<std::string> unmatched_private;

  std::vector<BenchmarkRef> benchmarks() const;
  bool operator==(const PairConfig&) const = default;
};

void to_json(nlohmann::json& j, const PairConfig& c);
void from_json(const nlohmann::json& j, PairConfig& c);

struct RSReport {
  std::string model_id;
  double rs1_absolute = 0.0;
  std::optional<double> rs1_relative;  // absent with fewer than 2 models
  std::optional<double> rs2;            // absent with < 2 private benchmarks
  std::optional<double> rs2_normalized;
  std::vector<std::string> warnings;

  bool operator==(const RSReport&) const = default;
};

void to_json(nlohmann::json& j, const RSReport& r);
void from_json(const nlohmann::json& j, RSReport& r);

// Reports for every model in the table, in table order. Models lacking a
// needed cell raise DomainError.
std::vector<RSReport> rugged_reports(const PerfTable& table);

}  // namespace arxivroll::metrics
