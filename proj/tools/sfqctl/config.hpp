#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfqctl {

using json = nlohmann::ordered_json;

/// Bad config value; `field` is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Read-only view of one JSON object. Every value read (or defaulted) is
/// recorded so that `resolved()` returns the fully-resolved section, and
/// unknown keys are rejected.
class Section {
 public:
  Section(json source, std::string path);

  const std::string& path() const { return path_; }
  std::string field(const std::string& key) const;
  bool has(const std::string& key) const;

  double number(const std::string& key, double fallback);
  double positive(const std::string& key, double fallback);
  double non_negative(const std::string& key, double fallback);
  double probability(const std::string& key, double fallback);
  std::optional<double> optional_number(const std::string& key);
  std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t min_value);
  std::uint64_t seed(const std::string& key, std::uint64_t fallback);
  bool flag(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::string choice(const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<std::string> texts(const std::string& key);

  /// Nested object; absent keys give an empty section.
  Section child(const std::string& key);
  /// Records a derived value (for example a default computed from others).
  void put(const std::string& key, json value);
  /// Stores a finished child section under `key`.
  void adopt(const std::string& key, const Section& child);

  /// Throws on keys that were never read.
  void finish() const;
  const json& resolved() const { return out_; }

 private:
  const json* lookup(const std::string& key);
  json src_;
  std::string path_;
  std::set<std::string> used_;
  json out_ = json::object();
};

/// Parses a config file; an empty path gives an empty object.
json load_config_file(const std::string& path);

/// Applies "a.b.c=value" to `config`. The value is parsed as JSON when it
/// parses, otherwise kept as a string.
void apply_override(json& config, const std::string& assignment);

/// JSON text with every floating-point number at 9 significant digits.
/// Negative `indent` gives a single line.
std::string to_text(const json& j, int indent = -1);
std::string format_number(double x);

/// Non-empty, non-comment lines of a text file.
std::vector<std::string> read_lines(const std::string& path);

}  // namespace sfqctl
