#include "arxivroll/harness/model.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <thread>

#include "arxivroll/harness/prompt.hpp"
#include "arxivroll/hash.hpp"
#include "arxivroll/http_util.hpp"
#include "httplib.h"

namespace arxivroll::harness {

void ModelConfig::validate() const {
  if (model_id.empty()) throw DomainError("model_id is empty");
  if (endpoint_url.empty()) throw DomainError("endpoint_url is empty");
  if (temperature != 0.0) {
    throw DomainError("temperature must be 0 (greedy decoding), got " +
                      std::to_string(temperature));
  }
  if (max_new_tokens < 1) throw DomainError("max_new_tokens must be >= 1");
  if (request_timeout <= 0) throw DomainError("request_timeout must be > 0");
  if (max_in_flight < 1) throw DomainError("max_in_flight must be >= 1");
  if (retry_policy.max_attempts < 1) {
    throw DomainError("retry.max_attempts must be >= 1");
  }
  if (retry_policy.base_backoff < 0) {
    throw DomainError("retry.base_backoff must be >= 0");
  }
}

void apply_config(ModelConfig& m, const KvConfig& c,
                  const std::string& prefix) {
  auto key = [&](const char* k) { return prefix + k; };
  if (auto v = c.get_string(key("model_id"))) m.model_id = *v;
  if (auto v = c.get_string(key("endpoint_url"))) m.endpoint_url = *v;
  if (auto v = c.get_string(key("api_model"))) m.api_model = *v;
  if (auto v = c.get_string(key("auth_token_env_var"))) {
    m.auth_token_env_var = *v;
  }
  if (auto v = c.get_double(key("temperature"))) m.temperature = *v;
  if (auto v = c.get_int(key("max_new_tokens"))) {
    m.max_new_tokens = static_cast<int>(*v);
  }
  if (auto v = c.get_double(key("request_timeout"))) m.request_timeout = *v;
  if (auto v = c.get_int(key("max_in_flight"))) {
    m.max_in_flight = static_cast<int>(*v);
  }
  if (auto v = c.get_int(key("retry.max_attempts"))) {
    m.retry_policy.max_attempts = static_cast<int>(*v);
  }
  if (auto v = c.get_double(key("retry.base_backoff"))) {
    m.retry_policy.base_backoff = *v;
  }
}

ModelConfig load_model_config(const std::filesystem::path& path) {
  ModelConfig m;
  apply_config(m, KvConfig::load(path));
  m.validate();
  return m;
}

void to_json(nlohmann::json& j, const ModelConfig& m) {
  j = {{"model_id", m.model_id},
       {"endpoint_url", m.endpoint_url},
       {"api_model", m.api_model},
       {"auth_token_env_var", m.auth_token_env_var},
       {"temperature", m.temperature},
       {"max_new_tokens", m.max_new_tokens},
       {"request_timeout", m.request_timeout},
       {"max_in_flight", m.max_in_flight},
       {"retry_policy",
        {{"max_attempts", m.retry_policy.max_attempts},
         {"base_backoff", m.retry_policy.base_backoff}}}};
}

void from_json(const nlohmann::json& j, ModelConfig& m) {
  j.at("model_id").get_to(m.model_id);
  j.at("endpoint_url").get_to(m.endpoint_url);
  m.api_model = j.value("api_model", "");
  m.auth_token_env_var = j.value("auth_token_env_var", "");
  j.at("temperature").get_to(m.temperature);
  j.at("max_new_tokens").get_to(m.max_new_tokens);
  j.at("request_timeout").get_to(m.request_timeout);
  j.at("max_in_flight").get_to(m.max_in_flight);
  const auto& r = j.at("retry_policy");
  r.at("max_attempts").get_to(m.retry_policy.max_attempts);
  r.at("base_backoff").get_to(m.retry_policy.base_backoff);
}

// ---------------------------------------------------------------------------

HttpModelClient::HttpModelClient(ModelConfig config)
    : config_(std::move(config)) {
  if (config_.api_model.empty()) config_.api_model = config_.model_id;
  if (!config_.auth_token_env_var.empty()) {
    const char* v = std::getenv(config_.auth_token_env_var.c_str());
    if (!v || !*v) {
      throw DomainError("environment variable " + config_.auth_token_env_var +
                        " holding the API credential is not set");
    }
    token_ = v;
  }
}

std::string HttpModelClient::complete(const Query& q) {
  UrlParts parts = split_url(config_.endpoint_url);
  httplib::Client client(parts.origin);
  auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(config_.request_timeout));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  nlohmann::json body = {
      {"model", config_.api_model},
      {"messages", {{{"role", "user"}, {"content", q.prompt}}}},
      {"temperature", config_.temperature},
      {"max_tokens", config_.max_new_tokens}};
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

  auto res = client.Post(parts.path, headers, body.dump(), "application/json");
  if (!res) {
    throw NetworkError("POST " + config_.endpoint_url + " failed: " +
                           httplib::to_string(res.error()),
                       true);
  }
  if (res->status == 401 || res->status == 403) {
    throw AuthError("endpoint " + config_.endpoint_url + " rejected the " +
                    "credential (HTTP " + std::to_string(res->status) + ")");
  }
  if (res->status < 200 || res->status >= 300) {
    bool retryable = res->status == 429 || res->status >= 500;
    throw NetworkError("POST " + config_.endpoint_url + " returned HTTP " +
                           std::to_string(res->status),
                       retryable);
  }
  auto j = nlohmann::json::parse(res->body, nullptr, false);
  if (j.is_discarded() || !j.contains("choices") || j["choices"].empty()) {
    throw NetworkError("malformed chat-completion response", false);
  }
  const auto& msg = j["choices"][0]["message"];
  if (!msg.is_object() || !msg.contains("content")) {
    throw NetworkError("chat-completion response has no message content",
                       false);
  }
  return msg["content"].is_string() ? msg["content"].get<std::string>() : "";
}

// ---------------------------------------------------------------------------

bool is_mock_url(std::string_view url) { return url.starts_with("mock://"); }

namespace {

std::map<std::string, std::string> query_params(std::string_view q) {
  std::map<std::string, std::string> out;
  while (!q.empty()) {
    std::size_t amp = q.find('&');
    std::string_view kv = q.substr(0, amp);
    std::size_t eq = kv.find('=');
    out[std::string(kv.substr(0, eq))] =
        eq == std::string_view::npos ? "" : std::string(kv.substr(eq + 1));
    if (amp == std::string_view::npos) break;
    q.remove_prefix(amp + 1);
  }
  return out;
}

double parse_probability(const std::string& s, const std::string& name) {
  try {
    std::size_t used = 0;
    double p = std::stod(s, &used);
    if (used == s.size() && p >= 0.0 && p <= 1.0) return p;
  } catch (const std::exception&) {
  }
  throw DomainError("mock parameter " + name + " must be in [0,1], got \"" +
                    s + "\"");
}

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError("mock parameter seed must be an integer, got \"" + s +
                    "\"");
}

std::string letter(int index) {
  return std::string(to_string(answer_for_index(index)));
}

// Correct with probability p, otherwise a uniform pick among the rest.
std::string skilled_answer(const std::string& key, int correct, double p) {
  if (hash_unit(key) < p) return letter(correct);
  int offset = 1 + static_cast<int>(hash64(key + "|wrong") % 3);
  return letter((correct + offset) % 4);
}

std::string passage_key(const scpgen::TestCase& tc) {
  const auto& pv = tc.provenance;
  return pv.article_id + "|" + std::to_string(pv.span_start) + "-" +
         std::to_string(pv.span_end) + "|" + std::string(to_string(tc.task_kind));
}

}  // namespace

MockModelClient::MockModelClient(const std::string& url) {
  if (!is_mock_url(url)) throw DomainError("not a mock endpoint: " + url);
  std::string_view rest = std::string_view(url).substr(7);
  std::size_t qm = rest.find('?');
  std::string name(rest.substr(0, qm));
  auto params = query_params(qm == std::string_view::npos
                                 ? std::string_view{}
                                 : rest.substr(qm + 1));
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = params.find(k);
    if (it == params.end()) {
      throw DomainError("mock://" + name + " requires parameter " + k);
    }
    return it->second;
  };
  if (name == "always-correct") {
    profile_ = Profile::kAlwaysCorrect;
  } else if (name == "constant") {
    profile_ = Profile::kConstant;
    constant_ = need("answer");
  } else if (name == "uniform-random") {
    profile_ = Profile::kUniform;
    seed_ = parse_seed(need("seed"));
  } else if (name == "skill") {
    profile_ = Profile::kSkill;
    p_ = parse_probability(need("p"), "p");
    seed_ = parse_seed(need("seed"));
  } else if (name == "contaminated") {
    profile_ = Profile::kContaminated;
    p_ = parse_probability(need("p"), "p");
    seed_ = parse_seed(need("seed"));
    if (params.count("p_memorized")) {
      p_memorized_ = parse_probability(params["p_memorized"], "p_memorized");
    }
    std::string_view files = need("memorized");
    while (!files.empty()) {
      std::size_t comma = files.find(',');
      std::string path(files.substr(0, comma));
      if (!path.empty()) {
        for (const auto& tc : scpgen::read_benchmark(path).items) {
          memorized_.insert(tc.case_id);
        }
      }
      if (comma == std::string_view::npos) break;
      files.remove_prefix(comma + 1);
    }
  } else {
    throw DomainError("unknown mock profile \"" + name + "\"");
  }
}

std::string MockModelClient::complete(const Query& q) {
  if (profile_ == Profile::kConstant) return constant_;
  if (!q.test_case) throw Error("mock endpoint needs the test case");
  const auto& tc = *q.test_case;
  std::string seed = std::to_string(seed_);
  switch (profile_) {
    case Profile::kAlwaysCorrect:
      return letter(tc.correct_index);
    case Profile::kUniform:
      return letter(static_cast<int>(
          hash64("uniform|" + seed + "|" + tc.case_id) % 4));
    case Profile::kSkill:
      return skilled_answer("skill|" + seed + "|" + passage_key(tc),
                            tc.correct_index, p_);
    case Profile::kContaminated:
      if (memorized_.count(tc.case_id)) {
        return skilled_answer("memorized|" + seed + "|" + tc.case_id,
                              tc.correct_index, p_memorized_);
      }
      return skilled_answer("skill|" + seed + "|" + passage_key(tc),
                            tc.correct_index, p_);
    case Profile::kConstant:
      break;
  }
  return constant_;
}

std::unique_ptr<ModelClient> make_client(const ModelConfig& config) {
  if (is_mock_url(config.endpoint_url)) {
    return std::make_unique<MockModelClient>(config.endpoint_url);
  }
  return std::make_unique<HttpModelClient>(config);
}

void real_sleep(std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }

std::string query_model(ModelClient& client, const Query& q,
                        const RetryPolicy& policy, const Sleeper& sleep) {
  for (int attempt = 1;; ++attempt) {
    try {
      return client.complete(q);
    } catch (const NetworkError& e) {
      if (!e.retryable() || attempt >= policy.max_attempts) throw;
    }
    double seconds = std::ldexp(policy.base_backoff, attempt - 1);
    sleep(std::chrono::milliseconds(static_cast<long long>(seconds * 1000)));
  }
}

}  // namespace arxivroll::harness
