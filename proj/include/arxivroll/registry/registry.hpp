#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "arxivroll/scpgen/test_case.hpp"

namespace arxivroll::registry {

struct RegistryRecord {
  std::string benchmark_id;
  std::string period_label;
  Domain domain = Domain::kCs;
  TaskKind task_kind = TaskKind::kSequencing;
  scpgen::BenchmarkStatus status = scpgen::BenchmarkStatus::kPrivate;
  std::string created;
  std::optional<std::string> expired_at;  // present iff expired
  std::string content_digest;
  std::string digest_algorithm;
  std::filesystem::path path;  // absolute

  bool operator==(const RegistryRecord&) const = default;
};

// Lifecycle store backed by an append-only JSONL event log. Every call
// replays the log, so separate processes see each other's writes. Writers
// hold an advisory lock on "<log>.lock" from replay through append.
class Registry {
 public:
  explicit Registry(std::filesystem::path log_path);

  // Throws ConflictError when the id is already registered.
  RegistryRecord register_benchmark(const scpgen::Benchmark& bench,
                                    const std::filesystem::path& file);

  struct ExpireResult {
    RegistryRecord record;
    bool already_expired = false;  // no event written
  };
  // Throws DomainError for an unknown id.
  ExpireResult expire(const std::string& benchmark_id, const std::string& at);

  // Every record, ordered by benchmark_id, digests verified
  // (IntegrityError on mismatch or a missing file).
  std::vector<RegistryRecord> list() const;
  // The record with its digest verified, or nullopt.
  std::optional<RegistryRecord> find(const std::string& benchmark_id) const;

  const std::filesystem::path& log_path() const { return log_path_; }

 private:
  std::vector<RegistryRecord> replay() const;
  void append(const std::string& line) const;

  std::filesystem::path log_path_;
};

// Throws IntegrityError when the file's digest differs from the record's.
void verify_digest(const RegistryRecord& record);

void to_json(nlohmann::json& j, const RegistryRecord& r);

}  // namespace arxivroll::registry
