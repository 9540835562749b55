#include "arxivroll/harness/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "arxivroll/fsutil.hpp"
#include "arxivroll/hash.hpp"

namespace arxivroll::harness {

double se_pct(std::size_t n_correct, std::size_t n) {
  if (n == 0) return 0.0;
  double p = static_cast<double>(n_correct) / static_cast<double>(n);
  return 100.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

void summarize(EvalRun& run) {
  run.n = run.items.size();
  run.n_correct = 0;
  run.n_failed = 0;
  for (const auto& r : run.items) {
    run.n_correct += r.correct;
    run.n_failed += r.failed;
  }
  run.accuracy_pct =
      run.n ? 100.0 * static_cast<double>(run.n_correct) / run.n : 0.0;
  run.se_pct = se_pct(run.n_correct, run.n);
}

namespace {

ItemResult evaluate_item(const scpgen::TestCase& tc, const ModelConfig& config,
                         ModelClient& client, const ScoreOptions& options) {
  ItemResult r;
  r.case_id = tc.case_id;
  Query q{&tc, render_prompt(tc)};
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.raw_output = query_model(client, q, config.retry_policy, options.sleep);
    r.extracted = extract_answer(r.raw_output);
    r.correct = answer_index(r.extracted) == tc.correct_index;
  } catch (const NetworkError& e) {
    r.failed = true;
    r.error = e.what();
  }
  if (options.record_latency) {
    r.latency_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  }
  return r;
}

}  // namespace

EvalRun score_benchmark(const scpgen::Benchmark& bench,
                        const ModelConfig& config, ModelClient& client,
                        const ScoreOptions& options) {
  config.validate();
  if (bench.items.empty()) {
    throw PreconditionError("benchmark " + bench.benchmark_id + " is empty");
  }
  const std::size_t n = bench.items.size();
  std::vector<std::optional<ItemResult>> slots(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> fatal{false};
  std::mutex fatal_mu;
  std::exception_ptr fatal_error;

  auto worker = [&] {
    while (!fatal.load()) {
      if (options.stop && options.stop->load()) return;
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        slots[i] = evaluate_item(bench.items[i], config, client, options);
      } catch (...) {
        std::lock_guard lock(fatal_mu);
        if (!fatal_error) fatal_error = std::current_exception();
        fatal.store(true);
      }
    }
  };
  std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(config.max_in_flight), n);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (fatal_error) std::rethrow_exception(fatal_error);

  EvalRun run;
  run.model_id = config.model_id;
  run.benchmark_id = bench.benchmark_id;
  run.tag = options.tag;
  run.period_label = bench.period_label;
  run.domain = bench.domain;
  run.task_kind = bench.task_kind;
  run.seed = bench.seed;
  run.generator_version = bench.generator_version;
  run.model_config = config;
  for (auto& s : slots) {
    if (s) {
      run.items.push_back(std::move(*s));
    } else {
      run.interrupted = true;
    }
  }
  std::sort(run.items.begin(), run.items.end(),
            [](const auto& a, const auto& b) { return a.case_id < b.case_id; });
  summarize(run);
  if (run.n_failed * 2 > n) {
    throw DomainError("run of " + config.model_id + " on " +
                      bench.benchmark_id + " aborted as unreliable: " +
                      std::to_string(run.n_failed) + " of " +
                      std::to_string(n) + " items failed in transport");
  }
  return run;
}

void to_json(nlohmann::json& j, const ItemResult& r) {
  j = {{"case_id", r.case_id},
       {"raw_output", r.raw_output},
       {"extracted", to_string(r.extracted)},
       {"correct", r.correct},
       {"latency", r.latency_ms},
       {"failed", r.failed}};
  if (!r.error.empty()) j["error"] = r.error;
}

void from_json(const nlohmann::json& j, ItemResult& r) {
  j.at("case_id").get_to(r.case_id);
  j.at("raw_output").get_to(r.raw_output);
  r.extracted = answer_from_string(j.at("extracted").get<std::string>());
  j.at("correct").get_to(r.correct);
  j.at("latency").get_to(r.latency_ms);
  r.failed = j.value("failed", false);
  r.error = j.value("error", "");
}

void to_json(nlohmann::json& j, const EvalRun& run) {
  nlohmann::json config = run.model_config;
  j = {{"model_id", run.model_id},
       {"benchmark_id", run.benchmark_id},
       {"tag", run.tag},
       {"interrupted", run.interrupted},
       {"benchmark",
        {{"period_label", run.period_label},
         {"domain", to_string(run.domain)},
         {"task_kind", to_string(run.task_kind)},
         {"seed", run.seed},
         {"generator_version", run.generator_version}}},
       {"model_config", config},
       {"tool_version", kToolVersion},
       {"config_digest", sha256_hex(config.dump())},
       {"n", run.n},
       {"n_correct", run.n_correct},
       {"n_failed", run.n_failed},
       {"accuracy_pct", run.accuracy_pct},
       {"se_pct", run.se_pct},
       {"items", run.items}};
}

void from_json(const nlohmann::json& j, EvalRun& run) {
  j.at("model_id").get_to(run.model_id);
  j.at("benchmark_id").get_to(run.benchmark_id);
  run.tag = j.value("tag", "");
  run.interrupted = j.value("interrupted", false);
  const auto& b = j.at("benchmark");
  b.at("period_label").get_to(run.period_label);
  run.domain = domain_from_string(b.at("domain").get<std::string>());
  run.task_kind = task_kind_from_string(b.at("task_kind").get<std::string>());
  b.at("seed").get_to(run.seed);
  b.at("generator_version").get_to(run.generator_version);
  j.at("model_config").get_to(run.model_config);
  j.at("items").get_to(run.items);
  summarize(run);
  bool consistent = j.at("n").get<std::size_t>() == run.n &&
                    j.at("n_correct").get<std::size_t>() == run.n_correct &&
                    std::abs(j.at("accuracy_pct").get<double>() -
                             run.accuracy_pct) < 1e-9 &&
                    std::abs(j.at("se_pct").get<double>() - run.se_pct) < 1e-9;
  if (!consistent) {
    throw IntegrityError("aggregates of run " + run.model_id + "/" +
                         run.benchmark_id + " disagree with its items");
  }
}

std::filesystem::path run_path(const std::filesystem::path& results_root,
                               const std::string& model_id,
                               const std::string& benchmark_id) {
  std::string dir = model_id;
  std::replace(dir.begin(), dir.end(), '/', '_');
  return results_root / dir / (benchmark_id + ".json");
}

void write_eval_run(const EvalRun& run, const std::filesystem::path& path) {
  nlohmann::json j = run;
  std::filesystem::create_directories(path.parent_path());
  write_file_atomic(path, j.dump(2) + "\n");
}

EvalRun read_eval_run(const std::filesystem::path& path) {
  auto j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) {
    throw DomainError("evaluation run " + path.string() + " is not valid JSON");
  }
  try {
    return j.get<EvalRun>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("evaluation run " + path.string() + ": " + e.what());
  }
}

}  // namespace arxivroll::harness
