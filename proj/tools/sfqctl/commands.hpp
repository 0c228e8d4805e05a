#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace sfqctl {

struct Dataset {
  std::string file_name;
  std::string content;
};

struct CommandOutput {
  json config;  // fully resolved
  json result;
  std::vector<Dataset> datasets;
  std::string primary;  // dataset printed to stdout in csv mode
};

/// Each command reads its config section by section; top-level keys common
/// to all commands are "seed" and "threads".
CommandOutput run_simulate(const json& config);
CommandOutput run_optimize(const json& config);
CommandOutput run_pgu(const json& config);
CommandOutput run_measure(const json& config);
CommandOutput run_budget(const json& config);

using Runner = CommandOutput (*)(const json&);
/// Null for unknown names.
Runner find_command(const std::string& name);
const std::vector<std::string>& command_names();

}  // namespace sfqctl
