#include "arxivroll/registry/leaderboard.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "arxivroll/fsutil.hpp"
#include "arxivroll/metrics/correlation.hpp"

namespace arxivroll::registry {

namespace fs = std::filesystem;
using nlohmann::json;

std::string cell_key(Domain d, TaskKind t) {
  return std::string(to_string(d)) + "/" + std::string(to_string(t));
}

namespace {

struct Pool {
  std::size_t n = 0;
  std::size_t n_correct = 0;
  std::size_t runs = 0;
};

bool same_result(const harness::EvalRun& a, const harness::EvalRun& b) {
  return a.items == b.items && a.tag == b.tag;
}

}  // namespace

std::vector<LeaderboardRow> build_leaderboard(
    const std::vector<std::pair<std::string, harness::EvalRun>>& runs,
    const std::vector<metrics::RSReport>& reports,
    const LeaderboardOptions& options) {
  // (model, benchmark) -> (source, run)
  std::map<std::pair<std::string, std::string>,
           const std::pair<std::string, harness::EvalRun>*>
      unique;
  for (const auto& entry : runs) {
    const auto& run = entry.second;
    if (options.period_label && run.period_label != *options.period_label) {
      continue;
    }
    if (options.exclude_benchmarks.count(run.benchmark_id)) continue;
    if (!options.include_expired_reruns &&
        run.tag == harness::kExpiredRerunTag) {
      continue;
    }
    auto key = std::make_pair(run.model_id, run.benchmark_id);
    auto [it, fresh] = unique.emplace(key, &entry);
    if (!fresh && !same_result(it->second->second, run)) {
      throw DomainError("conflicting runs of " + run.model_id + " on " +
                        run.benchmark_id + ": " + it->second->first + " and " +
                        entry.first);
    }
  }
  if (unique.empty()) {
    throw PreconditionError("no evaluation runs to rank");
  }

  std::map<std::string, std::map<std::string, Pool>> pools;
  for (const auto& [key, entry] : unique) {
    const auto& run = entry->second;
    Pool& p = pools[run.model_id][cell_key(run.domain, run.task_kind)];
    p.n += run.n;
    p.n_correct += run.n_correct;
    p.runs += 1;
  }

  std::map<std::string, const metrics::RSReport*> by_model;
  for (const auto& r : reports) by_model[r.model_id] = &r;

  std::vector<LeaderboardRow> rows;
  for (const auto& [model, cells] : pools) {
    LeaderboardRow row;
    row.model_id = model;
    double sum = 0.0;
    for (const auto& [key, p] : cells) {
      Cell c;
      c.n = p.n;
      c.runs = p.runs;
      c.accuracy_pct = p.n ? 100.0 * static_cast<double>(p.n_correct) / p.n : 0;
      c.se_pct = harness::se_pct(p.n_correct, p.n);
      sum += c.accuracy_pct;
      row.cells[key] = c;
    }
    row.mean_accuracy = sum / static_cast<double>(cells.size());
    if (auto it = by_model.find(model); it != by_model.end()) {
      row.rs1_absolute = it->second->rs1_absolute;
      row.rs1_relative = it->second->rs1_relative;
      row.rs2 = it->second->rs2;
      row.rs2_normalized = it->second->rs2_normalized;
    }
    rows.push_back(std::move(row));
  }

  std::vector<double> means;
  for (const auto& r : rows) means.push_back(r.mean_accuracy);
  auto ranks = metrics::average_ranks(means, /*descending=*/true);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = ranks[i];
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.rank != b.rank ? a.rank < b.rank : a.model_id < b.model_id;
  });
  return rows;
}

namespace {

std::vector<fs::path> json_files(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::pair<std::string, harness::EvalRun>> load_runs(
    const fs::path& results_dir) {
  if (!fs::is_directory(results_dir)) {
    throw DomainError("results directory " + results_dir.string() +
                      " does not exist");
  }
  std::vector<std::pair<std::string, harness::EvalRun>> out;
  for (const auto& p : json_files(results_dir)) {
    out.emplace_back(p.string(), harness::read_eval_run(p));
  }
  return out;
}

std::vector<metrics::RSReport> load_reports(const fs::path& dir) {
  std::vector<metrics::RSReport> out;
  for (const auto& p : json_files(dir)) {
    auto j = json::parse(read_file(p), nullptr, false);
    if (j.is_discarded()) {
      throw DomainError("rugged-score report " + p.string() +
                        " is not valid JSON");
    }
    out.push_back(j.get<metrics::RSReport>());
  }
  return out;
}

std::vector<LeaderboardRow> build_leaderboard(
    const fs::path& results_dir, const fs::path& rs_dir,
    const LeaderboardOptions& options) {
  return build_leaderboard(load_runs(results_dir), load_reports(rs_dir),
                           options);
}

ReportFormat report_format_from_string(std::string_view s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "md" || s == "markdown") return ReportFormat::kMarkdown;
  if (s == "csv") return ReportFormat::kCsv;
  throw DomainError("unknown report format \"" + std::string(s) +
                    "\" (json, md, csv)");
}

std::string_view extension(ReportFormat f) {
  switch (f) {
    case ReportFormat::kJson: return ".json";
    case ReportFormat::kMarkdown: return ".md";
    case ReportFormat::kCsv: break;
  }
  return ".csv";
}

namespace {

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& j, const char* k) {
  if (!j.contains(k) || j.at(k).is_null()) return std::nullopt;
  return j.at(k).get<double>();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fixed(const std::optional<double>& v, int digits) {
  return v ? fixed(*v, digits) : "-";
}

std::string rank_text(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", r);
  return buf;
}

// Columns in domain, then task order.
std::vector<std::string> columns(const std::vector<LeaderboardRow>& rows) {
  std::set<std::string> present;
  for (const auto& r : rows) {
    for (const auto& [k, c] : r.cells) present.insert(k);
  }
  std::vector<std::string> out;
  for (Domain d : kAllDomains) {
    for (TaskKind t : {TaskKind::kSequencing, TaskKind::kCloze,
                       TaskKind::kPrediction}) {
      if (present.count(cell_key(d, t))) out.push_back(cell_key(d, t));
    }
  }
  return out;
}

std::string column_title(const std::string& key) {
  auto slash = key.find('/');
  return key.substr(0, slash) + " " +
         static_cast<char>(task_letter(task_kind_from_string(key.substr(slash + 1))));
}

std::string csv_number(const std::optional<double>& v) {
  return v ? json(*v).dump() : "";
}

std::string markdown(const std::vector<LeaderboardRow>& rows) {
  auto cols = columns(rows);
  std::string out = "| Rank | Model |";
  for (const auto& c : cols) out += " " + column_title(c) + " |";
  out += " Mean | RS_I | RS_I rank shift | RS_II | RS_II^N |\n";
  out += "|---:|:---|";
  for (std::size_t i = 0; i < cols.size(); ++i) out += "---:|";
  out += "---:|---:|---:|---:|---:|\n";
  for (const auto& r : rows) {
    out += "| " + rank_text(r.rank) + " | " + r.model_id + " |";
    for (const auto& c : cols) {
      auto it = r.cells.find(c);
      out += " ";
      out += it == r.cells.end() ? "-"
                                 : fixed(it->second.accuracy_pct, 1) + " ± " +
                                       fixed(it->second.se_pct, 1);
      out += " |";
    }
    out += " " + fixed(r.mean_accuracy, 1) + " | " + fixed(r.rs1_absolute, 3) +
           " | " + fixed(r.rs1_relative, 2) + " | " + fixed(r.rs2, 3) + " | " +
           fixed(r.rs2_normalized, 3) + " |\n";
  }
  return out;
}

std::string csv(const std::vector<LeaderboardRow>& rows) {
  auto cols = columns(rows);
  std::string out = "rank,model_id";
  for (const auto& c : cols) out += "," + c + ":accuracy_pct," + c + ":se_pct";
  out += ",mean_accuracy,rs1_absolute,rs1_relative,rs2,rs2_normalized\n";
  for (const auto& r : rows) {
    std::string id = r.model_id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char ch : id) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      id = q + "\"";
    }
    out += json(r.rank).dump() + "," + id;
    for (const auto& c : cols) {
      auto it = r.cells.find(c);
      if (it == r.cells.end()) {
        out += ",,";
      } else {
        out += "," + json(it->second.accuracy_pct).dump() + "," +
               json(it->second.se_pct).dump();
      }
    }
    out += "," + json(r.mean_accuracy).dump() + "," +
           csv_number(r.rs1_absolute) + "," + csv_number(r.rs1_relative) +
           "," + csv_number(r.rs2) + "," + csv_number(r.rs2_normalized) + "\n";
  }
  return out;
}

}  // namespace

void to_json(json& j, const LeaderboardRow& r) {
  json cells = json::object();
  for (const auto& [k, c] : r.cells) {
    cells[k] = {{"accuracy_pct", c.accuracy_pct}, {"se_pct", c.se_pct},
                {"n", c.n}, {"runs", c.runs}};
  }
  j = {{"model_id", r.model_id},
       {"rank", r.rank},
       {"mean_accuracy", r.mean_accuracy},
       {"cells", cells},
       {"rs1_absolute", optional_number(r.rs1_absolute)},
       {"rs1_relative", optional_number(r.rs1_relative)},
       {"rs2", optional_number(r.rs2)},
       {"rs2_normalized", optional_number(r.rs2_normalized)}};
}

void from_json(const json& j, LeaderboardRow& r) {
  j.at("model_id").get_to(r.model_id);
  j.at("rank").get_to(r.rank);
  j.at("mean_accuracy").get_to(r.mean_accuracy);
  r.cells.clear();
  for (const auto& [k, c] : j.at("cells").items()) {
    Cell cell;
    c.at("accuracy_pct").get_to(cell.accuracy_pct);
    c.at("se_pct").get_to(cell.se_pct);
    c.at("n").get_to(cell.n);
    c.at("runs").get_to(cell.runs);
    r.cells[k] = cell;
  }
  r.rs1_absolute = read_optional(j, "rs1_absolute");
  r.rs1_relative = read_optional(j, "rs1_relative");
  r.rs2 = read_optional(j, "rs2");
  r.rs2_normalized = read_optional(j, "rs2_normalized");
}

std::vector<LeaderboardRow> rows_from_json(std::string_view text) {
  auto j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.contains("rows")) {
    throw DomainError("not a leaderboard document");
  }
  return j.at("rows").get<std::vector<LeaderboardRow>>();
}

std::string emit_report(const std::vector<LeaderboardRow>& rows,
                        ReportFormat format) {
  if (rows.empty()) throw PreconditionError("leaderboard has no rows");
  switch (format) {
    case ReportFormat::kJson:
      return json{{"tool_version", kToolVersion}, {"rows", rows}}.dump(2) +
             "\n";
    case ReportFormat::kMarkdown:
      return markdown(rows);
    case ReportFormat::kCsv:
      break;
  }
  return csv(rows);
}

}  // namespace arxivroll::registry
