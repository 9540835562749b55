#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <set>
#include <string>

#include "arxivroll/kvconfig.hpp"
#include "arxivroll/scpgen/test_case.hpp"
#include "json.hpp"

namespace arxivroll::harness {

struct RetryPolicy {
  int max_attempts = 3;
  double base_backoff = 1.0;  // seconds; doubles after each failed attempt

  bool operator==(const RetryPolicy&) const = default;
};

struct ModelConfig {
  std::string model_id;
  std::string endpoint_url;  // full chat-completions URL, or mock://...
  std::string api_model;     // "model" field sent upstream; defaults to model_id
  std::string auth_token_env_var = "ARXIVROLL_API_KEY";
  double temperature = 0.0;
  int max_new_tokens = 50;
  double request_timeout = 60.0;  // seconds
  int max_in_flight = 4;
  RetryPolicy retry_policy;

  // Throws DomainError: temperature must be 0, counts must be positive.
  void validate() const;

  bool operator==(const ModelConfig&) const = default;
};

// Reads the keys of `config` that are present, leaving the rest untouched.
// Keys are looked up under `prefix` ("" for a model.toml, "model." inside
// the tool configuration): model_id, endpoint_url, api_model,
// auth_token_env_var, temperature, max_new_tokens, request_timeout,
// max_in_flight, retry.max_attempts, retry.base_backoff.
void apply_config(ModelConfig& m, const KvConfig& config,
                  const std::string& prefix = "");
ModelConfig load_model_config(const std::filesystem::path& path);

void to_json(nlohmann::json& j, const ModelConfig& m);
void from_json(const nlohmann::json& j, ModelConfig& m);

// Credentials were rejected. Fatal for the whole model run.
class AuthError : public Error {
 public:
  using Error::Error;
};

// One request. The case is visible to in-process mock endpoints only.
struct Query {
  const scpgen::TestCase* test_case = nullptr;
  std::string prompt;
};

class ModelClient {
 public:
  virtual ~ModelClient() = default;
  // Returns the assistant text. Throws NetworkError (retryable or not) or
  // AuthError.
  virtual std::string complete(const Query& q) = 0;
};

// OpenAI-compatible chat completion with a single user message.
class HttpModelClient : public ModelClient {
 public:
  explicit HttpModelClient(ModelConfig config);
  std::string complete(const Query& q) override;

 private:
  ModelConfig config_;
  std::string token_;
};

// In-process endpoints selected by URL:
//   mock://always-correct
//   mock://constant?answer=B
//   mock://uniform-random?seed=7
//   mock://skill?p=0.5&seed=7
//   mock://contaminated?memorized=a.jsonl,b.jsonl&p_memorized=0.9&p=0.3&seed=7
//
// Draws are hashes of the seed and the case, never shared state, so answers
// do not depend on request order. The skill profiles key competence on the
// passage (article and paragraph span) and task, the way a fixed model is
// consistently right or wrong about a given text. Wrong answers pick one of
// the other three letters uniformly. For "contaminated", case ids found in
// the listed benchmark files are answered at p_memorized.
class MockModelClient : public ModelClient {
 public:
  explicit MockModelClient(const std::string& url);
  std::string complete(const Query& q) override;

 private:
  enum class Profile { kAlwaysCorrect, kConstant, kUniform, kSkill,
                       kContaminated };
  Profile profile_;
  std::string constant_;
  std::uint64_t seed_ = 0;
  double p_ = 0.0;
  double p_memorized_ = 0.9;
  std::set<std::string> memorized_;
};

bool is_mock_url(std::string_view url);
std::unique_ptr<ModelClient> make_client(const ModelConfig& config);

using Sleeper = std::function<void(std::chrono::milliseconds)>;
void real_sleep(std::chrono::milliseconds d);

// Calls client.complete up to policy.max_attempts times. Retryable
// NetworkErrors sleep base_backoff * 2^(attempt-1) between attempts; the
// last error is rethrown. AuthError and non-retryable errors propagate at
// once.
std::string query_model(ModelClient& client, const Query& q,
                        const RetryPolicy& policy,
                        const Sleeper& sleep = real_sleep);

}  // namespace arxivroll::harness
