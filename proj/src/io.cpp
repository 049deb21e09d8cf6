#include "trimlat/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace trimlat {

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& os, bool timestamp) : os_(os) {
  if (timestamp) os_ << timestamp_line() << "\n";
}

void CsvWriter::comment(const std::string& text) { os_ << "# " << text << "\n"; }

namespace {

void write_joined(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

}  // namespace

void CsvWriter::header(const std::vector<std::string>& names) { write_joined(os_, names); }

void CsvWriter::row(const std::vector<std::string>& cells) { write_joined(os_, cells); }

std::string timestamp_line() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[48];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return std::string("# generated ") + buf;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j = nlohmann::json::parse(f);  // parse errors propagate
  return from_json(j);
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  if (!j.contains("command") || !j.at("command").is_string()) {
    throw std::invalid_argument("config needs a \"command\" string");
  }
  ExperimentConfig cfg;
  cfg.command = j.at("command").get<std::string>();
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw std::invalid_argument("config \"params\" must be an object");
    cfg.params = j.at("params");
  }
  return cfg;
}

bool ExperimentConfig::has(const std::string& key) const {
  return params.contains(key) && !params.at(key).is_null();
}

double ExperimentConfig::real(const std::string& key, std::optional<double> fallback) const {
  if (!has(key)) {
    if (fallback) return *fallback;
    throw std::invalid_argument("config parameter missing: " + key);
  }
  const auto& v = params.at(key);
  if (!v.is_number()) throw std::invalid_argument("config parameter is not a number: " + key);
  return v.get<double>();
}

std::int64_t ExperimentConfig::integer(const std::string& key,
                                       std::optional<std::int64_t> fallback) const {
  if (!has(key)) {
    if (fallback) return *fallback;
    throw std::invalid_argument("config parameter missing: " + key);
  }
  const auto& v = params.at(key);
  if (!v.is_number_integer()) {
    throw std::invalid_argument("config parameter is not an integer: " + key);
  }
  return v.get<std::int64_t>();
}

std::string ExperimentConfig::str(const std::string& key,
                                  std::optional<std::string> fallback) const {
  if (!has(key)) {
    if (fallback) return *fallback;
    throw std::invalid_argument("config parameter missing: " + key);
  }
  const auto& v = params.at(key);
  if (!v.is_string()) throw std::invalid_argument("config parameter is not a string: " + key);
  return v.get<std::string>();
}

std::vector<double> ExperimentConfig::reals(const std::string& key) const {
  if (!has(key)) throw std::invalid_argument("config parameter missing: " + key);
  const auto& v = params.at(key);
  if (!v.is_array()) throw std::invalid_argument("config parameter is not an array: " + key);
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw std::invalid_argument("config array has a non-number: " + key);
    out.push_back(e.get<double>());
  }
  return out;
}

void ExperimentConfig::set_if_absent(const std::string& key, const nlohmann::json& value) {
  if (!has(key)) params[key] = value;
}

}  // namespace trimlat
