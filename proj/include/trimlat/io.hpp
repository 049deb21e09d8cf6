#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace trimlat {

// 17 significant digits, enough to round-trip a double.
std::string fmt_real(double v);

// Comma-separated rows, LF line endings. Strings pass through (callers keep
// them comma-free), reals go through fmt_real.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os, bool timestamp = true);
  void comment(const std::string& text);  // "# ..." line
  void header(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& cells);
  std::ostream& stream() { return os_; }

 private:
  std::ostream& os_;
};

// "# generated <ISO-8601 UTC>"; suppressed by --no-timestamp for byte-stable
// outputs.
std::string timestamp_line();

// Experiment configuration: JSON object with a "command" string and a flat
// "params" object. Command-line flags override file values.
struct ExperimentConfig {
  std::string command;
  nlohmann::json params = nlohmann::json::object();

  static ExperimentConfig load(const std::string& path);
  static ExperimentConfig from_json(const nlohmann::json& j);

  bool has(const std::string& key) const;
  double real(const std::string& key, std::optional<double> fallback = std::nullopt) const;
  std::int64_t integer(const std::string& key,
                       std::optional<std::int64_t> fallback = std::nullopt) const;
  std::string str(const std::string& key, std::optional<std::string> fallback = std::nullopt) const;
  std::vector<double> reals(const std::string& key) const;
  void set_if_absent(const std::string& key, const nlohmann::json& value);
};

}  // namespace trimlat
