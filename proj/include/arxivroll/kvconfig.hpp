#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace arxivroll {

// Reader for the flat TOML subset used by model and tool configuration:
//
//   # comment
//   key = "string" | 42 | 0.5 | true | ["a", "b"]
//   [section]            -> following keys are stored as "section.key"
//
// Inline tables, multi-line strings and dates are not supported.
class KvConfig {
 public:
  using Value = std::variant<std::string, std::int64_t, double, bool,
                             std::vector<std::string>>;

  static KvConfig parse(std::string_view text);
  static KvConfig load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return values_.count(key); }
  const std::map<std::string, Value>& values() const { return values_; }

  std::optional<std::string> get_string(const std::string& key) const;
  std::optional<std::int64_t> get_int(const std::string& key) const;
  // Integers are accepted where a real is expected.
  std::optional<double> get_double(const std::string& key) const;
  std::optional<bool> get_bool(const std::string& key) const;
  std::optional<std::vector<std::string>> get_strings(
      const std::string& key) const;

 private:
  std::map<std::string, Value> values_;
};

}  // namespace arxivroll
