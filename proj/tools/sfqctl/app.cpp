#include "app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "sfq/pattern.hpp"
#include "sfq/pgu.hpp"

namespace sfqctl {

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string out_dir;
  std::string format = "json";
  std::vector<std::string> sets;
};

void add_common(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
  sub.add_option("--seed", f.seed, "RNG seed (overrides the config)");
  sub.add_option("--out", f.out_dir, "Directory for report.json and datasets");
  sub.add_option("--threads", f.threads, "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber);
  sub.add_option("--format", f.format, "Stdout format: json report or csv dataset")
      ->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--set", f.sets, "Override one config value, key.path=value (repeatable)");
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message,
                 const std::string& field = "") {
  json e = {{"kind", kind}, {"message", message}};
  if (!field.empty()) e["field"] = field;
  err << json{{"error", e}}.dump() << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SFQ control and readout modeling tool"};
  app.require_subcommand(1);
  Flags flags;
  const std::map<std::string, std::string> help{
      {"simulate", "Propagate a pulse pattern and report gate fidelity"},
      {"optimize", "Genetic search for pulse patterns, or a register-size scan"},
      {"pgu", "Stream register patterns through the pattern generator"},
      {"measure", "Photon-counter readout statistics and Rabi scan"},
      {"budget", "Power, thermal and footprint budget of the interface"}};
  for (const auto& name : command_names()) add_common(*app.add_subcommand(name, help.at(name)), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    json config = load_config_file(flags.config_path);
    for (const auto& s : flags.sets) apply_override(config, s);
    if (flags.seed) config["seed"] = *flags.seed;
    if (flags.threads) config["threads"] = *flags.threads;

    const CommandOutput o = find_command(name)(config);
    const json report{{"command", name}, {"config", o.config}, {"result", o.result}};

    if (!flags.out_dir.empty()) {
      const std::filesystem::path dir(flags.out_dir);
      std::filesystem::create_directories(dir);
      write_file(dir / "report.json", to_text(report, 2) + "\n");
      for (const auto& d : o.datasets) write_file(dir / d.file_name, d.content);
    }
    if (flags.format == "csv" && !o.primary.empty()) {
      out << "# sfqctl " << name << " config: " << to_text(report["config"]) << '\n';
      for (const auto& d : o.datasets) {
        if (d.file_name == o.primary) out << d.content;
      }
    } else {
      out << to_text(report, 2) << '\n';
    }
    return 0;
  } catch (const ConfigError& e) {
    print_error(err, "config", e.what(), e.field());
    return 2;
  } catch (const sfq::CapacityError& e) {
    print_error(err, "capacity", e.what());
  } catch (const sfq::StitchingError& e) {
    print_error(err, "stitching", e.what());
  } catch (const std::invalid_argument& e) {
    print_error(err, "invalid_argument", e.what());
  } catch (const std::exception& e) {
    print_error(err, "runtime", e.what());
  }
  return 1;
}

}  // namespace sfqctl
