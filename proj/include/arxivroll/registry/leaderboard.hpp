#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arxivroll/harness/scoring.hpp"
#include "arxivroll/metrics/rugged.hpp"

namespace arxivroll::registry {

// Accuracy on one (domain, task kind). Runs on several benchmarks of the
// same kind are pooled: accuracy and SE over the combined items.
struct Cell {
  double accuracy_pct = 0.0;
  double se_pct = 0.0;
  std::size_t n = 0;
  std::size_t runs = 0;

  bool operator==(const Cell&) const = default;
};

// Column key, e.g. "cs/sequencing".
std::string cell_key(Domain d, TaskKind t);

struct LeaderboardRow {
  std::string model_id;
  std::map<std::string, Cell> cells;  // absent cells are never imputed
  double mean_accuracy = 0.0;         // unweighted mean over cells
  double rank = 0.0;                  // 1-based, ties share the average
  std::optional<double> rs1_absolute;
  std::optional<double> rs1_relative;
  std::optional<double> rs2;
  std::optional<double> rs2_normalized;

  bool operator==(const LeaderboardRow&) const = default;
};

struct LeaderboardOptions {
  std::optional<std::string> period_label;  // only runs from this period
  bool include_expired_reruns = true;
  std::set<std::string> exclude_benchmarks;
};

// Joins runs and rugged-score reports into rows ordered by (rank,
// model_id). Identical duplicate runs of a (model, benchmark) are merged;
// differing ones raise DomainError naming both sources.
std::vector<LeaderboardRow> build_leaderboard(
    const std::vector<std::pair<std::string, harness::EvalRun>>& runs,
    const std::vector<metrics::RSReport>& reports,
    const LeaderboardOptions& options = {});

// Reads every *.json run under results_dir and every *.json report under
// rs_dir (which may be absent).
std::vector<LeaderboardRow> build_leaderboard(
    const std::filesystem::path& results_dir,
    const std::filesystem::path& rs_dir,
    const LeaderboardOptions& options = {});

std::vector<std::pair<std::string, harness::EvalRun>> load_runs(
    const std::filesystem::path& results_dir);
std::vector<metrics::RSReport> load_reports(const std::filesystem::path& dir);

enum class ReportFormat { kJson, kMarkdown, kCsv };
ReportFormat report_format_from_string(std::string_view s);  // json, md, csv
std::string_view extension(ReportFormat f);

// Markdown cells read "22.9 ± 0.8"; JSON is loss-free; CSV has a fixed
// column order. Throws PreconditionError for no rows.
std::string emit_report(const std::vector<LeaderboardRow>& rows,
                        ReportFormat format);

void to_json(nlohmann::json& j, const LeaderboardRow& r);
void from_json(const nlohmann::json& j, LeaderboardRow& r);
std::vector<LeaderboardRow> rows_from_json(std::string_view text);

}  // namespace arxivroll::registry
