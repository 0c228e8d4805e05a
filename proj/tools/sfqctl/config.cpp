#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sfqctl {

Section::Section(json source, std::string path) : src_(std::move(source)), path_(std::move(path)) {
  if (src_.is_null()) src_ = json::object();
  if (!src_.is_object()) throw ConfigError(path_, "expected an object");
}

std::string Section::field(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

bool Section::has(const std::string& key) const {
  return src_.contains(key) && !src_.at(key).is_null();
}

const json* Section::lookup(const std::string& key) {
  used_.insert(key);
  if (!has(key)) return nullptr;
  return &src_.at(key);
}

double Section::number(const std::string& key, double fallback) {
  const json* v = lookup(key);
  double x = fallback;
  if (v) {
    if (!v->is_number()) throw ConfigError(field(key), "expected a number");
    x = v->get<double>();
  }
  if (!std::isfinite(x)) throw ConfigError(field(key), "must be finite");
  out_[key] = x;
  return x;
}

double Section::positive(const std::string& key, double fallback) {
  const double x = number(key, fallback);
  if (!(x > 0.0)) throw ConfigError(field(key), "must be > 0");
  return x;
}

double Section::non_negative(const std::string& key, double fallback) {
  const double x = number(key, fallback);
  if (x < 0.0) throw ConfigError(field(key), "must be >= 0");
  return x;
}

double Section::probability(const std::string& key, double fallback) {
  const double x = number(key, fallback);
  if (x < 0.0 || x > 1.0) throw ConfigError(field(key), "must be in [0, 1]");
  return x;
}

std::optional<double> Section::optional_number(const std::string& key) {
  if (!has(key)) {
    used_.insert(key);
    return std::nullopt;
  }
  return number(key, 0.0);
}

std::int64_t Section::integer(const std::string& key, std::int64_t fallback,
                              std::int64_t min_value) {
  const json* v = lookup(key);
  std::int64_t x = fallback;
  if (v) {
    if (v->is_number_integer()) {
      x = v->get<std::int64_t>();
    } else if (v->is_number_float() && std::floor(v->get<double>()) == v->get<double>() &&
               std::abs(v->get<double>()) < 9e15) {
      x = static_cast<std::int64_t>(v->get<double>());
    } else {
      throw ConfigError(field(key), "expected an integer");
    }
  }
  if (x < min_value) {
    throw ConfigError(field(key), "must be >= " + std::to_string(min_value));
  }
  out_[key] = x;
  return x;
}

std::uint64_t Section::seed(const std::string& key, std::uint64_t fallback) {
  const json* v = lookup(key);
  std::uint64_t x = fallback;
  if (v) {
    if (v->is_number_unsigned()) {
      x = v->get<std::uint64_t>();
    } else {
      throw ConfigError(field(key), "expected a non-negative integer");
    }
  }
  out_[key] = x;
  return x;
}

bool Section::flag(const std::string& key, bool fallback) {
  const json* v = lookup(key);
  bool b = fallback;
  if (v) {
    if (!v->is_boolean()) throw ConfigError(field(key), "expected true or false");
    b = v->get<bool>();
  }
  out_[key] = b;
  return b;
}

std::string Section::text(const std::string& key, const std::string& fallback) {
  const json* v = lookup(key);
  std::string s = fallback;
  if (v) {
    if (!v->is_string()) throw ConfigError(field(key), "expected a string");
    s = v->get<std::string>();
  }
  out_[key] = s;
  return s;
}

std::string Section::choice(const std::string& key, const std::string& fallback,
                            const std::vector<std::string>& allowed) {
  const std::string s = text(key, fallback);
  if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw ConfigError(field(key), "must be one of: " + list);
  }
  return s;
}

std::vector<double> Section::numbers(const std::string& key, const std::vector<double>& fallback) {
  const json* v = lookup(key);
  std::vector<double> xs = fallback;
  if (v) {
    if (!v->is_array()) throw ConfigError(field(key), "expected an array of numbers");
    xs.clear();
    for (const auto& e : *v) {
      if (!e.is_number()) throw ConfigError(field(key), "expected an array of numbers");
      xs.push_back(e.get<double>());
    }
  }
  out_[key] = xs;
  return xs;
}

std::vector<std::string> Section::texts(const std::string& key) {
  const json* v = lookup(key);
  std::vector<std::string> xs;
  if (v) {
    if (!v->is_array()) throw ConfigError(field(key), "expected an array of strings");
    for (const auto& e : *v) {
      if (!e.is_string()) throw ConfigError(field(key), "expected an array of strings");
      xs.push_back(e.get<std::string>());
    }
    out_[key] = xs;
  }
  return xs;
}

Section Section::child(const std::string& key) {
  const json* v = lookup(key);
  return Section(v ? *v : json::object(), field(key));
}

void Section::put(const std::string& key, json value) {
  used_.insert(key);
  out_[key] = std::move(value);
}

void Section::adopt(const std::string& key, const Section& child) {
  child.finish();
  put(key, child.resolved());
}

void Section::finish() const {
  for (const auto& [key, value] : src_.items()) {
    if (!used_.count(key)) throw ConfigError(field(key), "unknown key");
  }
}

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path);
  try {
    json j = json::parse(in, nullptr, true, true);
    if (!j.is_object()) throw ConfigError("--config", "top level must be an object");
    return j;
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("parse error: ") + e.what());
  }
}

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set", "expected key.path=value, got '" + assignment + "'");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  json* node = &config;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) throw ConfigError("--set", "empty component in '" + path + "'");
    parts.push_back(part);
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    json& next = (*node)[parts[i]];
    if (next.is_null()) next = json::object();
    if (!next.is_object()) throw ConfigError(path, "'" + parts[i] + "' is not an object");
    node = &next;
  }
  (*node)[parts.back()] = std::move(value);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

namespace {

void write_json(std::string& s, const json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    s += '\n';
    s.append(static_cast<std::size_t>(indent * d), ' ');
  };
  if (j.is_number_float()) {
    const double x = j.get<double>();
    s += std::isfinite(x) ? format_number(x) : "null";
  } else if (j.is_object() || j.is_array()) {
    const bool obj = j.is_object();
    s += obj ? '{' : '[';
    if (j.empty()) {
      s += obj ? '}' : ']';
      return;
    }
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) s += ',';
      first = false;
      newline(depth + 1);
      if (obj) {
        s += json(it.key()).dump();
        s += indent < 0 ? ":" : ": ";
      }
      write_json(s, it.value(), indent, depth + 1);
    }
    newline(depth);
    s += obj ? '}' : ']';
  } else {
    s += j.dump();
  }
}

}  // namespace

std::string to_text(const json& j, int indent) {
  std::string s;
  write_json(s, j, indent, 0);
  return s;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
               line.end());
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace sfqctl
