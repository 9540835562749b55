#include "arxivroll/registry/registry.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "arxivroll/fsutil.hpp"
#include "arxivroll/hash.hpp"

namespace arxivroll::registry {

namespace fs = std::filesystem;
using nlohmann::json;

void to_json(json& j, const RegistryRecord& r) {
  j = {{"benchmark_id", r.benchmark_id},
       {"period_label", r.period_label},
       {"domain", to_string(r.domain)},
       {"task_kind", to_string(r.task_kind)},
       {"status", to_string(r.status)},
       {"created", r.created},
       {"expired_at", r.expired_at ? json(*r.expired_at) : json(nullptr)},
       {"content_digest", r.content_digest},
       {"digest_algorithm", r.digest_algorithm},
       {"path", r.path.string()}};
}

void verify_digest(const RegistryRecord& r) {
  if (!fs::exists(r.path)) {
    throw IntegrityError("benchmark file " + r.path.string() + " of " +
                         r.benchmark_id + " is missing");
  }
  if (sha256_hex(read_file(r.path)) != r.content_digest) {
    throw IntegrityError("benchmark file " + r.path.string() +
                         " no longer matches the digest registered for " +
                         r.benchmark_id);
  }
}

Registry::Registry(fs::path log_path) : log_path_(std::move(log_path)) {}

std::vector<RegistryRecord> Registry::replay() const {
  std::map<std::string, RegistryRecord> state;
  if (fs::exists(log_path_)) {
    std::string text = read_file(log_path_);
    std::size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
      std::size_t nl = text.find('\n', pos);
      std::string_view line(text.data() + pos,
                            (nl == std::string::npos ? text.size() : nl) - pos);
      pos = nl == std::string::npos ? text.size() : nl + 1;
      ++line_no;
      if (trim(line).empty()) continue;
      auto where = log_path_.string() + ":" + std::to_string(line_no);
      auto j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("event")) {
        throw IntegrityError("unreadable registry event at " + where);
      }
      try {
        std::string id = j.at("benchmark_id").get<std::string>();
        std::string event = j.at("event").get<std::string>();
        if (event == "register") {
          if (state.count(id)) {
            throw IntegrityError("second register event for " + id + " at " +
                                 where);
          }
          RegistryRecord r;
          r.benchmark_id = id;
          r.period_label = j.at("period_label").get<std::string>();
          r.domain = domain_from_string(j.at("domain").get<std::string>());
          r.task_kind =
              task_kind_from_string(j.at("task_kind").get<std::string>());
          r.created = j.at("created").get<std::string>();
          r.content_digest = j.at("content_digest").get<std::string>();
          r.digest_algorithm = j.at("digest_algorithm").get<std::string>();
          r.path = j.at("path").get<std::string>();
          state[id] = std::move(r);
        } else if (event == "expire") {
          auto it = state.find(id);
          if (it == state.end()) {
            throw IntegrityError("expire event for unregistered " + id +
                                 " at " + where);
          }
          if (it->second.status == scpgen::BenchmarkStatus::kPrivate) {
            it->second.status = scpgen::BenchmarkStatus::kExpired;
            it->second.expired_at = j.at("at").get<std::string>();
          }
        } else {
          throw IntegrityError("unknown registry event \"" + event + "\" at " +
                               where);
        }
      } catch (const json::exception& e) {
        throw IntegrityError("malformed registry event at " + where + ": " +
                             e.what());
      }
    }
  }
  std::vector<RegistryRecord> out;
  for (auto& [id, r] : state) out.push_back(std::move(r));
  return out;
}

void Registry::append(const std::string& line) const {
  std::ofstream out(log_path_, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot append to " + log_path_.string());
  out << line << '\n';
  out.flush();
  if (!out) throw Error("short write to " + log_path_.string());
}

namespace {

fs::path lock_for(const fs::path& log) {
  fs::path p = log;
  p += ".lock";
  return p;
}

}  // namespace

RegistryRecord Registry::register_benchmark(const scpgen::Benchmark& bench,
                                            const fs::path& file) {
  RegistryRecord r;
  r.benchmark_id = bench.benchmark_id;
  r.period_label = bench.period_label;
  r.domain = bench.domain;
  r.task_kind = bench.task_kind;
  r.created = bench.created;
  r.digest_algorithm = std::string(kDigestAlgorithm);
  r.path = fs::absolute(file).lexically_normal();
  r.content_digest = sha256_hex(read_file(r.path));

  FileLock lock(lock_for(log_path_));
  for (const auto& existing : replay()) {
    if (existing.benchmark_id == r.benchmark_id) {
      throw ConflictError("benchmark " + r.benchmark_id +
                          " is already registered");
    }
  }
  json event = r;
  event.erase("status");
  event.erase("expired_at");
  event["event"] = "register";
  append(event.dump());
  return r;
}

Registry::ExpireResult Registry::expire(const std::string& benchmark_id,
                                        const std::string& at) {
  FileLock lock(lock_for(log_path_));
  for (auto& r : replay()) {
    if (r.benchmark_id != benchmark_id) continue;
    if (r.status == scpgen::BenchmarkStatus::kExpired) return {r, true};
    append(json{{"event", "expire"}, {"benchmark_id", benchmark_id},
                {"at", at}}
               .dump());
    r.status = scpgen::BenchmarkStatus::kExpired;
    r.expired_at = at;
    return {r, false};
  }
  throw DomainError("benchmark " + benchmark_id + " is not registered");
}

std::vector<RegistryRecord> Registry::list() const {
  auto records = replay();
  for (const auto& r : records) verify_digest(r);
  return records;
}

std::optional<RegistryRecord> Registry::find(
    const std::string& benchmark_id) const {
  for (auto& r : replay()) {
    if (r.benchmark_id == benchmark_id) {
      verify_digest(r);
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace arxivroll::registry
