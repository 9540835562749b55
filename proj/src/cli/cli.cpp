#include "arxivroll/cli/cli.hpp"

#include <algorithm>
#include <cstdio>

#include "CLI11.hpp"
#include "arxivroll/cli/ops.hpp"
#include "arxivroll/corpus/ingest.hpp"
#include "arxivroll/fsutil.hpp"
#include "arxivroll/harness/scoring.hpp"
#include "arxivroll/hash.hpp"
#include "arxivroll/registry/leaderboard.hpp"
#include "arxivroll/registry/registry.hpp"
#include "arxivroll/scpgen/builder.hpp"
#include "arxivroll/scpgen/fixture.hpp"

namespace arxivroll::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::atomic<bool>& interrupt_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

namespace {

// A required value is missing from both flags and the config file.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Interrupted : public std::runtime_error {
 public:
  Interrupted() : std::runtime_error("interrupted") {}
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Flag and option storage for every subcommand.
struct Options {
  std::string config_path;
  bool init = false;
  std::string log_level;

  // shared
  std::string corpus, out, registry, results, rs, period, created;
  std::string domain, task, model_config, endpoint, model_id;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  int max_in_flight = 0;

  // generate
  std::optional<std::size_t> n_paragraphs, min_words;
  std::optional<double> max_math_ratio;
  bool do_register = false;

  // ingest
  std::vector<std::string> domains;
  std::string start, end, source_dir, listing_url, source_url;
  std::size_t max_per_domain = 0;
  int delay_ms = 3000;

  // evaluate, registry, pairs
  std::vector<std::string> benches, public_benches, private_benches;
  bool allow_expired = false;
  std::string bench_id, at;
  bool list_json = false;
  bool promote_expired = false;

  // stability
  std::size_t seeds = 32;
  std::size_t stability_size = 500;
  std::uint64_t first_seed = 1;

  // correlate, leaderboard
  std::string table_a, table_b, format = "md", pairs_path;
};

class Runner {
 public:
  Runner(Options& o, std::ostream& out, std::ostream& err)
      : o_(o), out_(out), err_(err) {}

  void load_config() {
    if (o_.init) init();
    if (!o_.config_path.empty()) tool_ = load_tool_config(o_.config_path);
    if (!o_.log_level.empty()) tool_.log_level = o_.log_level;
  }

  void provenance(std::optional<std::uint64_t> seed) {
    err_ << "seed=" << (seed ? std::to_string(*seed) : std::string("none"))
         << " generator_version=" << kGeneratorVersion
         << " tool_version=" << kToolVersion << "\n";
  }

  void log(const std::string& msg) {
    if (tool_.log_level != "quiet") err_ << msg << "\n";
  }

  fs::path require_path(const std::string& flag_value,
                        const fs::path& config_value, const char* flag,
                        const char* key) {
    if (!flag_value.empty()) return flag_value;
    if (!config_value.empty()) return config_value;
    throw UsageError(std::string("missing ") + flag + " (or " + key +
                     " in --config)");
  }

  harness::ModelConfig model() {
    harness::ModelConfig m = tool_.model;
    if (!o_.model_config.empty()) {
      harness::apply_config(m, KvConfig::load(o_.model_config));
    }
    if (!o_.endpoint.empty()) m.endpoint_url = o_.endpoint;
    if (!o_.model_id.empty()) m.model_id = o_.model_id;
    if (o_.max_in_flight > 0) m.max_in_flight = o_.max_in_flight;
    if (m.endpoint_url.empty()) {
      throw UsageError("missing --endpoint or --model-config");
    }
    if (m.model_id.empty() && harness::is_mock_url(m.endpoint_url)) {
      std::string name = m.endpoint_url.substr(7);
      std::size_t q = name.find('?');
      m.model_id = "mock-" + name.substr(0, q);
      if (q != std::string::npos) m.model_id += "-" + stable_id(name, 8);
    }
    m.validate();
    return m;
  }

  scpgen::FragmentConfig fragment() {
    scpgen::FragmentConfig c = tool_.fragment;
    if (o_.n_paragraphs) c.n_paragraphs = *o_.n_paragraphs;
    if (o_.min_words) c.min_words = *o_.min_words;
    if (o_.max_math_ratio) c.max_math_ratio = *o_.max_math_ratio;
    c.validate();
    return c;
  }

  int ingest() {
    provenance(std::nullopt);
    corpus::IngestOptions opt;
    opt.out = require_path(o_.out, tool_.corpus_root, "--out", "corpus_root");
    for (const auto& d : o_.domains) opt.domains.push_back(domain_from_string(d));
    if (opt.domains.empty()) opt.domains.assign(kAllDomains.begin(), kAllDomains.end());
    opt.window = {date_from_string(o_.start), date_from_string(o_.end)};
    opt.period_label = o_.period;
    opt.max_per_domain = o_.max_per_domain;
    corpus::IngestSummary s;
    if (!o_.source_dir.empty()) {
      opt.source_dir = o_.source_dir;
      s = corpus::ingest_from_directory(opt);
    } else {
      corpus::ArxivClientOptions co;
      if (!o_.listing_url.empty()) co.listing_url = o_.listing_url;
      if (!o_.source_url.empty()) co.source_url = o_.source_url;
      co.min_interval = std::chrono::milliseconds(o_.delay_ms);
      corpus::HttpFetcher fetcher;
      corpus::SteadyClock clock;
      corpus::ArxivClient client(co, fetcher, clock);
      s = corpus::ingest_from_arxiv(opt, client);
    }
    for (const auto& w : s.warnings) log("warning: " + w);
    out_ << "stored " << s.stored << " articles (" << s.abstract_only
         << " abstract-only, " << s.skipped << " skipped) in "
         << opt.out.string() << "\n";
    return kExitOk;
  }

  int generate() {
    provenance(o_.seed);
    fs::path root =
        require_path(o_.corpus, tool_.corpus_root, "--corpus", "corpus_root");
    corpus::CorpusStore store(root);
    auto manifest = store.manifest();
    scpgen::BuildRequest req;
    req.domain = domain_from_string(o_.domain);
    req.task = task_kind_from_string(o_.task);
    req.config = fragment();
    req.seed = o_.seed;
    req.target_size = o_.size;
    req.period_label = o_.period.empty() ? manifest.period_label : o_.period;
    req.created = o_.created.empty()
                      ? manifest.window_end.str() + "T00:00:00Z"
                      : o_.created;
    auto bench = scpgen::build_benchmark(store, req);
    if (o_.size && bench.items.size() < o_.size) {
      log("warning: only " + std::to_string(bench.items.size()) +
          " eligible fragments for a requested size of " +
          std::to_string(o_.size));
    }
    fs::path path = o_.out;
    scpgen::write_benchmark(bench, path);
    out_ << bench.benchmark_id << " " << bench.items.size() << " items -> "
         << path.string() << "\n";
    if (o_.do_register) {
      registry::Registry reg(require_path(o_.registry, tool_.registry_path,
                                          "--registry", "registry_path"));
      reg.register_benchmark(bench, path);
      log("registered " + bench.benchmark_id + " as private");
    }
    return kExitOk;
  }

  int evaluate() {
    auto m = model();
    fs::path results =
        require_path(o_.out, tool_.results_root, "--out", "results_root");
    std::optional<registry::Registry> reg;
    fs::path reg_path = o_.registry.empty() ? tool_.registry_path
                                            : fs::path(o_.registry);
    if (!reg_path.empty() && fs::exists(reg_path)) reg.emplace(reg_path);
    auto client = harness::make_client(m);

    for (const auto& file : o_.benches) {
      auto bench = scpgen::read_benchmark(file);
      provenance(bench.seed);
      bool expired = bench.status == scpgen::BenchmarkStatus::kExpired;
      if (reg) {
        if (auto rec = reg->find(bench.benchmark_id)) {
          if (sha256_hex(read_file(file)) != rec->content_digest) {
            throw IntegrityError(file + " differs from the registered " +
                                 bench.benchmark_id);
          }
          expired = expired ||
                    rec->status == scpgen::BenchmarkStatus::kExpired;
        }
      }
      if (expired && !o_.allow_expired) {
        throw DomainError("benchmark " + bench.benchmark_id +
                          " is expired; pass --allow-expired to rerun it "
                          "for reproduction");
      }
      harness::ScoreOptions opts;
      opts.stop = &interrupt_flag();
      opts.record_latency = !harness::is_mock_url(m.endpoint_url);
      if (expired) opts.tag = std::string(harness::kExpiredRerunTag);
      auto run = harness::score_benchmark(bench, m, *client, opts);
      fs::path path = harness::run_path(results, m.model_id, bench.benchmark_id);
      if (run.interrupted) {
        path += ".partial";
        harness::write_eval_run(run, path);
        err_ << "interrupted: " << run.n << " completed items saved to "
             << path.string() << "\n";
        throw Interrupted();
      }
      harness::write_eval_run(run, path);
      out_ << m.model_id << " on " << bench.benchmark_id << ": "
           << fixed(run.accuracy_pct, 1) << " ± " << fixed(run.se_pct, 1)
           << " (n=" << run.n;
      if (run.n_failed) out_ << ", failed=" << run.n_failed;
      if (!run.tag.empty()) out_ << ", " << run.tag;
      out_ << ") -> " << path.string() << "\n";
    }
    return kExitOk;
  }

  int rs() {
    provenance(std::nullopt);
    fs::path results =
        require_path(o_.results, tool_.results_root, "--results", "results_root");
    fs::path out_dir = require_path(o_.out, tool_.rs_root, "--out", "rs_root");
    std::string pairs_text = read_file(o_.rs);
    auto pj = json::parse(pairs_text, nullptr, false);
    if (pj.is_discarded()) throw DomainError(o_.rs + " is not valid JSON");
    auto pairs = pj.get<metrics::PairConfig>();
    auto refs = pairs.benchmarks();

    std::map<std::string, std::map<std::string, std::pair<std::string, harness::EvalRun>>> by_model;
    for (auto& [source, run] : registry::load_runs(results)) {
      auto& slot = by_model[run.model_id];
      auto it = slot.find(run.benchmark_id);
      if (it != slot.end() && it->second.second.items != run.items) {
        throw DomainError("conflicting runs of " + run.model_id + " on " +
                          run.benchmark_id + ": " + it->second.first +
                          " and " + source);
      }
      slot.emplace(run.benchmark_id, std::make_pair(source, run));
    }
    std::vector<std::string> models;
    for (const auto& [model, runs] : by_model) {
      bool complete = std::all_of(refs.begin(), refs.end(), [&](const auto& r) {
        return runs.count(r.id) > 0;
      });
      if (complete) {
        models.push_back(model);
      } else {
        log("skipping " + model + ": not evaluated on every benchmark in " +
            o_.rs);
      }
    }
    if (models.empty()) {
      throw DomainError("no model has runs on every benchmark in " + o_.rs);
    }
    metrics::PerfTable table(models, refs);
    for (const auto& m : models) {
      for (const auto& r : refs) {
        table.set(m, r.id, by_model[m][r.id].second.accuracy_pct / 100.0);
      }
    }
    std::string digest = sha256_hex(json(pairs).dump());
    for (const auto& report : metrics::rugged_reports(table)) {
      json j = report;
      j["tool_version"] = kToolVersion;
      j["pairs_digest"] = digest;
      std::string name = report.model_id;
      std::replace(name.begin(), name.end(), '/', '_');
      write_file_atomic(out_dir / (name + ".json"), j.dump(2) + "\n");
      out_ << report.model_id << " rs1_absolute=" << fixed(report.rs1_absolute, 4);
      if (report.rs1_relative) out_ << " rs1_relative=" << fixed(*report.rs1_relative, 4);
      if (report.rs2) out_ << " rs2=" << fixed(*report.rs2, 4);
      if (report.rs2_normalized) {
        out_ << " rs2_normalized=" << fixed(*report.rs2_normalized, 4);
      }
      out_ << "\n";
      for (const auto& w : report.warnings) log("warning: " + report.model_id + ": " + w);
    }
    return kExitOk;
  }

  int stability() {
    provenance(o_.first_seed);
    fs::path root =
        require_path(o_.corpus, tool_.corpus_root, "--corpus", "corpus_root");
    corpus::CorpusStore store(root);
    auto manifest = store.manifest();
    StabilityRequest req;
    req.domain = domain_from_string(o_.domain);
    req.task = task_kind_from_string(o_.task);
    for (std::size_t i = 0; i < o_.seeds; ++i) req.seeds.push_back(o_.first_seed + i);
    req.size = o_.stability_size;
    req.fragment = fragment();
    req.period_label = o_.period.empty() ? manifest.period_label : o_.period;
    req.created = manifest.window_end.str() + "T00:00:00Z";
    req.model = model();
    req.stop = &interrupt_flag();
    StabilityReport report;
    try {
      report = stability_study(store.load_domain(req.domain), req);
    } catch (const Error& e) {
      if (interrupt_flag().load()) throw Interrupted();
      throw;
    }
    json j = report;
    if (!o_.out.empty()) write_file_atomic(o_.out, j.dump(2) + "\n");
    for (std::size_t i = 0; i < report.seeds.size(); ++i) {
      out_ << "seed " << report.seeds[i] << ": " << fixed(report.accuracies[i], 2)
           << " (n=" << report.n_items[i] << ")\n";
    }
    out_ << "mean=" << fixed(report.stats.mean, 3)
         << " std=" << fixed(report.stats.std, 3)
         << " min=" << fixed(report.stats.min, 2)
         << " max=" << fixed(report.stats.max, 2) << "\n";
    return kExitOk;
  }

  int correlate() {
    provenance(std::nullopt);
    auto a = load_score_table(o_.table_a);
    auto b = load_score_table(o_.table_b);
    auto row = correlate_tables(a, b);
    out_ << "| tables | models | Pearson | Spearman | Kendall |\n"
         << "|:---|---:|---:|---:|---:|\n"
         << "| " << fs::path(o_.table_a).filename().string() << " vs "
         << fs::path(o_.table_b).filename().string() << " | " << row.n_models
         << " | " << fixed(row.pearson, 4) << " | " << fixed(row.spearman, 4)
         << " | " << fixed(row.kendall, 4) << " |\n";
    if (!o_.out.empty()) {
      json j = {{"n_models", row.n_models}, {"pearson", row.pearson},
                {"spearman", row.spearman}, {"kendall", row.kendall},
                {"tool_version", kToolVersion}};
      write_file_atomic(o_.out, j.dump(2) + "\n");
    }
    return kExitOk;
  }

  registry::Registry open_registry() {
    return registry::Registry(require_path(o_.registry, tool_.registry_path,
                                           "--registry", "registry_path"));
  }

  int registry_register() {
    provenance(std::nullopt);
    auto reg = open_registry();
    auto bench = scpgen::read_benchmark(o_.benches.at(0));
    auto r = reg.register_benchmark(bench, o_.benches.at(0));
    out_ << "registered " << r.benchmark_id << " (" << to_string(r.status)
         << ", " << r.digest_algorithm << " " << r.content_digest << ")\n";
    return kExitOk;
  }

  int registry_expire() {
    provenance(std::nullopt);
    auto reg = open_registry();
    auto res = reg.expire(o_.bench_id, o_.at.empty() ? utc_now_iso() : o_.at);
    if (res.already_expired) {
      err_ << "warning: " << o_.bench_id << " was already expired at "
           << *res.record.expired_at << "\n";
    } else {
      out_ << "expired " << o_.bench_id << " at " << *res.record.expired_at
           << "\n";
    }
    return kExitOk;
  }

  int registry_list() {
    provenance(std::nullopt);
    auto records = open_registry().list();
    if (o_.list_json) {
      out_ << json(records).dump(2) << "\n";
      return kExitOk;
    }
    for (const auto& r : records) {
      out_ << r.benchmark_id << "\t" << to_string(r.status) << "\t"
           << to_string(r.domain) << "/" << to_string(r.task_kind) << "\t"
           << r.period_label << "\t" << r.created << "\t"
           << r.expired_at.value_or("-") << "\n";
    }
    return kExitOk;
  }

  int leaderboard() {
    provenance(std::nullopt);
    fs::path results =
        require_path(o_.results, tool_.results_root, "--results", "results_root");
    fs::path rs_dir = o_.rs.empty() ? tool_.rs_root : fs::path(o_.rs);
    registry::LeaderboardOptions opts;
    if (!o_.period.empty()) opts.period_label = o_.period;
    if (!o_.pairs_path.empty()) {
      auto pj = json::parse(read_file(o_.pairs_path), nullptr, false);
      if (pj.is_discarded()) throw DomainError(o_.pairs_path + " is not valid JSON");
      for (const auto& r : pj.get<metrics::PairConfig>().benchmarks()) {
        if (r.visibility == metrics::Visibility::kPublic) {
          opts.exclude_benchmarks.insert(r.id);
        }
      }
    }
    auto format = registry::report_format_from_string(o_.format);
    auto rows = registry::build_leaderboard(results, rs_dir, opts);
    std::string doc = registry::emit_report(rows, format);
    if (o_.out.empty()) {
      out_ << doc;
    } else {
      write_file_atomic(o_.out, doc);
      out_ << rows.size() << " models -> " << o_.out << "\n";
    }
    return kExitOk;
  }

  int pairs() {
    provenance(std::nullopt);
    std::vector<BenchmarkInfo> pub, priv;
    for (const auto& f : o_.public_benches) pub.push_back(read_benchmark_info(f));
    for (const auto& f : o_.private_benches) priv.push_back(read_benchmark_info(f));
    if (o_.promote_expired) {
      for (const auto& r : open_registry().list()) {
        if (r.status == scpgen::BenchmarkStatus::kExpired) {
          pub.push_back({r.benchmark_id, r.domain, r.task_kind});
        }
      }
    }
    auto config = make_pair_config(pub, priv);
    write_file_atomic(o_.out, json(config).dump(2) + "\n");
    out_ << config.pairs.size() << " pairs, " << config.unmatched_public.size()
         << " unmatched public, " << config.unmatched_private.size()
         << " unmatched private -> " << o_.out << "\n";
    return kExitOk;
  }

  int fixture() {
    provenance(o_.seed);
    scpgen::FixtureSpec spec;
    spec.seed = o_.seed;
    scpgen::write_fixture_corpus(o_.out, spec);
    out_ << "fixture corpus -> " << o_.out << "\n";
    return kExitOk;
  }

 private:
  void init() {
    if (o_.config_path.empty()) throw UsageError("--init needs --config");
    fs::path cfg = o_.config_path;
    if (!fs::exists(cfg)) {
      write_file_atomic(cfg, default_config_text());
      err_ << "wrote " << cfg.string() << "\n";
    }
    ToolConfig t = load_tool_config(cfg);
    for (const auto& dir : {t.corpus_root, t.results_root, t.rs_root}) {
      if (!dir.empty()) fs::create_directories(dir);
    }
    if (t.registry_path.has_parent_path()) {
      fs::create_directories(t.registry_path.parent_path());
    }
  }

  Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  ToolConfig tool_;
};

void add_model_flags(CLI::App* sub, Options& o) {
  sub->add_option("--model-config", o.model_config, "model.toml with ModelConfig keys");
  sub->add_option("--endpoint", o.endpoint,
                  "chat-completions URL or mock://always-correct, "
                  "mock://uniform-random?seed=N, mock://skill?p=P&seed=N, "
                  "mock://contaminated?memorized=FILES&p=P&seed=N");
  sub->add_option("--model-id", o.model_id, "display name of the model");
  sub->add_option("--max-in-flight", o.max_in_flight, "concurrent requests");
}

void add_fragment_flags(CLI::App* sub, Options& o) {
  sub->add_option("--n-paragraphs", o.n_paragraphs, "paragraphs per fragment");
  sub->add_option("--min-words", o.min_words, "minimum fragment words");
  sub->add_option("--max-math-ratio", o.max_math_ratio,
                  "maximum share of math tokens");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Private benchmark generation, evaluation and rugged scores",
               "arxivroll"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.add_option("--config", o.config_path, "tool configuration file");
  app.add_flag("--init", o.init,
               "write a default --config if missing and create its directories");
  app.add_option("--log-level", o.log_level, "quiet or info");
  app.require_subcommand(0, 1);

  auto* ingest = app.add_subcommand("ingest", "fetch arXiv articles into a corpus");
  ingest->add_option("--out", o.out, "corpus root");
  ingest->add_option("--domains", o.domains, "comma-separated domain codes")
      ->delimiter(',');
  ingest->add_option("--start", o.start, "window start YYYY-MM-DD")->required();
  ingest->add_option("--end", o.end, "window end YYYY-MM-DD")->required();
  ingest->add_option("--period", o.period, "period label, e.g. 2024b")->required();
  ingest->add_option("--source-dir", o.source_dir,
                     "read <dir>/<domain>/<id>.* instead of the network");
  ingest->add_option("--max-per-domain", o.max_per_domain, "0 = no limit");
  ingest->add_option("--delay-ms", o.delay_ms, "minimum gap between requests");
  ingest->add_option("--listing-url", o.listing_url, "metadata API endpoint");
  ingest->add_option("--source-url", o.source_url, "e-print endpoint");

  auto* gen = app.add_subcommand("generate", "build a private benchmark");
  gen->add_option("--corpus", o.corpus, "corpus root");
  gen->add_option("--domain", o.domain, "domain code")->required();
  gen->add_option("--task", o.task, "s, c or p")->required();
  gen->add_option("--seed", o.seed, "generation seed")->required();
  gen->add_option("--size", o.size, "items; 0 = every eligible fragment");
  gen->add_option("--period", o.period, "period label (default: corpus)");
  gen->add_option("--created", o.created,
                  "timestamp stamped in the header (default: window end)");
  gen->add_option("--out", o.out, "benchmark JSONL")->required();
  gen->add_flag("--register", o.do_register, "register as private");
  gen->add_option("--registry", o.registry, "registry log");
  add_fragment_flags(gen, o);

  auto* eval = app.add_subcommand("evaluate", "score a model on benchmarks");
  eval->add_option("--bench", o.benches, "benchmark JSONL (repeatable)")
      ->required();
  add_model_flags(eval, o);
  eval->add_option("--out", o.out, "results root");
  eval->add_option("--registry", o.registry, "registry log");
  eval->add_flag("--allow-expired", o.allow_expired,
                 "rerun an expired benchmark, tagged expired-rerun");

  auto* rs = app.add_subcommand("rs", "rugged scores from evaluation runs");
  rs->add_option("--pairs", o.rs, "pair configuration JSON")->required();
  rs->add_option("--results", o.results, "results root");
  rs->add_option("--out", o.out, "report directory");

  auto* stab = app.add_subcommand("stability", "regenerate per seed and score");
  stab->add_option("--corpus", o.corpus, "corpus root");
  stab->add_option("--domain", o.domain, "domain code")->required();
  stab->add_option("--task", o.task, "s, c or p")->required();
  stab->add_option("--seeds", o.seeds, "number of seeds")->capture_default_str();
  stab->add_option("--first-seed", o.first_seed, "first seed")
      ->capture_default_str();
  stab->add_option("--size", o.stability_size, "items per benchmark")
      ->capture_default_str();
  stab->add_option("--period", o.period, "period label (default: corpus)");
  stab->add_option("--out", o.out, "report JSON");
  add_model_flags(stab, o);
  add_fragment_flags(stab, o);

  auto* corr = app.add_subcommand("correlate", "correlate two score tables");
  corr->add_option("--a", o.table_a, "score table")->required();
  corr->add_option("--b", o.table_b, "score table")->required();
  corr->add_option("--out", o.out, "coefficients JSON");

  auto* reg = app.add_subcommand("registry", "benchmark lifecycle");
  reg->require_subcommand(1);
  auto* reg_add = reg->add_subcommand("register", "register a benchmark as private");
  reg_add->add_option("--bench", o.benches, "benchmark JSONL")->required();
  auto* reg_exp = reg->add_subcommand("expire", "mark a benchmark expired");
  reg_exp->add_option("--id", o.bench_id, "benchmark id")->required();
  reg_exp->add_option("--at", o.at, "timestamp (default: now)");
  auto* reg_list = reg->add_subcommand("list", "list registered benchmarks");
  reg_list->add_flag("--json", o.list_json, "JSON output");
  for (auto* s : {reg_add, reg_exp, reg_list}) {
    s->add_option("--registry", o.registry, "registry log");
  }

  auto* lb = app.add_subcommand("leaderboard", "aggregate runs into a leaderboard");
  lb->add_option("--results", o.results, "results root");
  lb->add_option("--rs", o.rs, "rugged-score report directory");
  lb->add_option("--format", o.format, "md, json or csv")->capture_default_str();
  lb->add_option("--out", o.out, "output file (default: stdout)");
  lb->add_option("--period", o.period, "only runs from this period");
  lb->add_option("--pairs", o.pairs_path,
                 "leave out the public benchmarks of this pair configuration");

  auto* pairs = app.add_subcommand("pairs", "write a pair configuration");
  pairs->add_option("--public", o.public_benches, "public benchmark JSONL");
  pairs->add_option("--private", o.private_benches, "private benchmark JSONL");
  pairs->add_flag("--promote-expired-as-public", o.promote_expired,
                  "treat expired registry benchmarks as public");
  pairs->add_option("--registry", o.registry, "registry log");
  pairs->add_option("--out", o.out, "pair configuration JSON")->required();

  auto* fix = app.add_subcommand("fixture", "write the synthetic test corpus");
  fix->add_option("--out", o.out, "corpus root")->required();
  o.seed = 2024;
  fix->add_option("--seed", o.seed, "fixture seed")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  Runner runner(o, out, err);
  CLI::App* active = nullptr;
  try {
    runner.load_config();
    if (app.get_subcommands().empty()) {
      if (o.init) return kExitOk;
      err << "error: a subcommand is required\n\n" << app.help();
      return kExitUsage;
    }
    active = app.get_subcommands().front();
    if (active == ingest) return runner.ingest();
    if (active == gen) return runner.generate();
    if (active == eval) return runner.evaluate();
    if (active == rs) return runner.rs();
    if (active == stab) return runner.stability();
    if (active == corr) return runner.correlate();
    if (active == lb) return runner.leaderboard();
    if (active == pairs) return runner.pairs();
    if (active == fix) return runner.fixture();
    if (active == reg) {
      CLI::App* leaf = reg->get_subcommands().front();
      active = leaf;
      if (leaf == reg_add) return runner.registry_register();
      if (leaf == reg_exp) return runner.registry_expire();
      return runner.registry_list();
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n"
        << (active ? active->help() : app.help());
    return kExitUsage;
  } catch (const Interrupted&) {
    return kExitInterrupted;
  } catch (const harness::AuthError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace arxivroll::cli
