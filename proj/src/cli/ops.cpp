#include "arxivroll/cli/ops.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "arxivroll/fsutil.hpp"
#include "arxivroll/harness/scoring.hpp"
#include "arxivroll/scpgen/builder.hpp"

namespace arxivroll::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void apply_fragment_config(scpgen::FragmentConfig& c, const KvConfig& kv,
                           const std::string& prefix) {
  auto count = [&](const char* key, std::size_t& field) {
    if (auto v = kv.get_int(prefix + key)) {
      if (*v < 0) throw DomainError(prefix + key + " must be >= 0");
      field = static_cast<std::size_t>(*v);
    }
  };
  count("n_paragraphs", c.n_paragraphs);
  count("min_words", c.min_words);
  if (auto v = kv.get_double(prefix + "max_math_ratio")) c.max_math_ratio = *v;
  count("min_sentences_seq", c.min_sentences_seq);
  count("min_sentences_cloze", c.min_sentences_cloze);
  count("min_sentences_pred", c.min_sentences_pred);
}

ToolConfig load_tool_config(const fs::path& path) {
  KvConfig kv = KvConfig::load(path);
  fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  ToolConfig t;
  auto path_key = [&](const char* key, fs::path& field) {
    if (auto v = kv.get_string(key)) {
      fs::path p = *v;
      field = p.is_absolute() ? p : base / p;
    }
  };
  path_key("corpus_root", t.corpus_root);
  path_key("results_root", t.results_root);
  path_key("registry_path", t.registry_path);
  path_key("rs_root", t.rs_root);
  if (auto v = kv.get_string("log_level")) {
    if (*v != "quiet" && *v != "info") {
      throw DomainError("log_level must be quiet or info");
    }
    t.log_level = *v;
  }
  apply_fragment_config(t.fragment, kv, "fragment.");
  harness::apply_config(t.model, kv, "model.");
  return t;
}

std::string default_config_text() {
  return R"(# arxivroll configuration. Flags override these values.
corpus_root = "corpus"
results_root = "results"
registry_path = "registry.log"
rs_root = "rs"
log_level = "info"

[fragment]
n_paragraphs = 1
min_words = 80
max_math_ratio = 0.15
min_sentences_seq = 4
min_sentences_cloze = 6
min_sentences_pred = 3

[model]
# model_id = "my-model"
# endpoint_url = "https://api.example.com/v1/chat/completions"
auth_token_env_var = "ARXIVROLL_API_KEY"
temperature = 0
max_new_tokens = 50
request_timeout = 60
max_in_flight = 4

[model.retry]
max_attempts = 3
base_backoff = 1.0
)";
}

StabilityReport stability_study(const std::vector<corpus::Article>& articles,
                                const StabilityRequest& request) {
  if (request.seeds.size() < 2) {
    throw PreconditionError("a stability study needs at least 2 seeds");
  }
  auto client = harness::make_client(request.model);
  StabilityReport report;
  report.domain = request.domain;
  report.task = request.task;
  report.model_id = request.model.model_id;
  for (std::uint64_t seed : request.seeds) {
    if (request.stop && request.stop->load()) {
      throw Error("interrupted");
    }
    scpgen::BuildRequest br;
    br.domain = request.domain;
    br.task = request.task;
    br.config = request.fragment;
    br.seed = seed;
    br.target_size = request.size;
    br.period_label = request.period_label;
    br.created = request.created;
    auto bench = scpgen::build_benchmark(articles, br);
    harness::ScoreOptions opts;
    opts.stop = request.stop;
    opts.record_latency = !harness::is_mock_url(request.model.endpoint_url);
    auto run = harness::score_benchmark(bench, request.model, *client, opts);
    if (run.interrupted) throw Error("interrupted");
    report.seeds.push_back(seed);
    report.n_items.push_back(run.n);
    report.accuracies.push_back(run.accuracy_pct);
  }
  report.stats = metrics::stability(report.accuracies);
  return report;
}

void to_json(json& j, const StabilityReport& r) {
  j = {{"domain", to_string(r.domain)},
       {"task_kind", to_string(r.task)},
       {"model_id", r.model_id},
       {"seeds", r.seeds},
       {"n_items", r.n_items},
       {"accuracies", r.accuracies},
       {"mean", r.stats.mean},
       {"std", r.stats.std},
       {"min", r.stats.min},
       {"max", r.stats.max},
       {"generator_version", kGeneratorVersion},
       {"tool_version", kToolVersion}};
}

ScoreTable load_score_table(const fs::path& path) {
  std::string text = read_file(path);
  ScoreTable t;
  auto j = json::parse(text, nullptr, false);
  if (!j.is_discarded()) {
    if (j.is_object() && j.contains("rows") && j["rows"].is_array()) {
      for (const auto& row : j["rows"]) {
        t[row.at("model_id").get<std::string>()] =
            row.at("mean_accuracy").get<double>();
      }
      return t;
    }
    if (j.is_object()) {
      for (const auto& [k, v] : j.items()) {
        if (!v.is_number()) {
          throw DomainError("score for " + k + " in " + path.string() +
                            " is not a number");
        }
        t[k] = v.get<double>();
      }
      return t;
    }
    throw DomainError(path.string() + " is not a score table");
  }
  std::istringstream in(text);
  std::string line;
  bool header = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw DomainError(path.string() + ":" + std::to_string(line_no) +
                        ": expected model_id,accuracy");
    }
    try {
      std::string id = trim(line.substr(0, comma));
      if (id.size() >= 2 && id.front() == '"' && id.back() == '"') {
        id = id.substr(1, id.size() - 2);
      }
      t[id] = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw DomainError(path.string() + ":" + std::to_string(line_no) +
                        ": accuracy is not a number");
    }
  }
  return t;
}

CorrelationRow correlate_tables(const ScoreTable& a, const ScoreTable& b) {
  std::vector<std::string> only;
  for (const auto& [k, v] : a) {
    if (!b.count(k)) only.push_back(k);
  }
  for (const auto& [k, v] : b) {
    if (!a.count(k)) only.push_back(k);
  }
  if (!only.empty()) {
    std::sort(only.begin(), only.end());
    throw DomainError("score tables cover different models: " +
                      join(only, ", "));
  }
  if (a.size() < 3) {
    throw PreconditionError("correlation needs at least 3 models");
  }
  std::vector<double> x, y;
  for (const auto& [k, v] : a) {
    x.push_back(v);
    y.push_back(b.at(k));
  }
  return {a.size(), metrics::pearson(x, y), metrics::spearman(x, y),
          metrics::kendall(x, y)};
}

BenchmarkInfo read_benchmark_info(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  auto j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw DomainError(path.string() + " has no benchmark header");
  }
  try {
    return {j.at("benchmark_id").get<std::string>(),
            domain_from_string(j.at("domain").get<std::string>()),
            task_kind_from_string(j.at("task_kind").get<std::string>())};
  } catch (const json::exception& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

metrics::PairConfig make_pair_config(const std::vector<BenchmarkInfo>& pub,
                                     const std::vector<BenchmarkInfo>& priv) {
  using Kind = std::pair<Domain, TaskKind>;
  auto group = [](const std::vector<BenchmarkInfo>& v) {
    std::map<Kind, std::vector<std::string>> g;
    for (const auto& b : v) g[{b.domain, b.task}].push_back(b.benchmark_id);
    for (auto& [k, ids] : g) {
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }
    return g;
  };
  auto gp = group(pub), gc = group(priv);
  std::set<std::string> seen;
  for (const auto& [k, ids] : gp) {
    for (const auto& id : ids) seen.insert(id);
  }
  for (const auto& [k, ids] : gc) {
    for (const auto& id : ids) {
      if (seen.count(id)) {
        throw DomainError("benchmark " + id + " is both public and private");
      }
    }
  }

  metrics::PairConfig c;
  std::set<Kind> kinds;
  for (const auto& [k, v] : gp) kinds.insert(k);
  for (const auto& [k, v] : gc) kinds.insert(k);
  for (const auto& kind : kinds) {
    const auto& p = gp[kind];
    const auto& q = gc[kind];
    std::size_t n = std::min(p.size(), q.size());
    for (std::size_t i = 0; i < n; ++i) {
      std::string id = std::string(to_string(kind.first)) + "-" +
                       static_cast<char>(std::tolower(task_letter(kind.second)));
      if (i) id += "-" + std::to_string(i + 1);
      c.pairs[id] = {p[i], q[i]};
    }
    for (std::size_t i = n; i < p.size(); ++i) c.unmatched_public.push_back(p[i]);
    for (std::size_t i = n; i < q.size(); ++i) c.unmatched_private.push_back(q[i]);
  }
  return c;
}

}  // namespace arxivroll::cli
