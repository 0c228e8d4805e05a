#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "config.hpp"

using sfqctl::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
  json error() const { return json::parse(err).at("error"); }
};

Run sfqctl_run(std::vector<std::string> args) {
  args.insert(args.begin(), "sfqctl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = sfqctl::run_app(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string config_path(const std::string& name) { return std::string(SFQ_CONFIG_DIR) + "/" + name; }

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("sfqctl_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

// Largest number of significant digits among the numeric literals in `text`,
// ignoring quoted strings.
int max_significant_digits(const std::string& raw) {
  static const std::regex quoted(R"("[^"]*")");
  const std::string text = std::regex_replace(raw, quoted, "\"\"");
  static const std::regex number(R"((?:^|[^\w.])-?(\d+(?:\.\d+)?)(?:e[+-]?\d+)?)");
  int worst = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), number); it != std::sregex_iterator();
       ++it) {
    std::string digits = (*it)[1];
    digits.erase(std::remove(digits.begin(), digits.end(), '.'), digits.end());
    const auto first = digits.find_first_not_of('0');
    if (first == std::string::npos) continue;
    digits = digits.substr(first);
    // Trailing zeros of integers are not significant.
    if ((*it)[1].str().find('.') == std::string::npos) {
      while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    }
    worst = std::max(worst, static_cast<int>(digits.size()));
  }
  return worst;
}

}  // namespace

TEST_CASE("simulate: shipped resonant config reaches the target in 20 ns") {
  const auto r = sfqctl_run({"simulate", "--config", config_path("resonant_pi2.json")});
  REQUIRE(r.code == 0);
  const auto res = r.report().at("result");
  CHECK(res.at("avg_gate_fidelity").get<double>() >= 0.999);
  CHECK(res.at("duration_s").get<double>() == doctest::Approx(20e-9).epsilon(1e-6));
  CHECK(res.at("pulse_count").get<int>() == 99);
}

TEST_CASE("simulate: no pulses and a zero target is the identity") {
  const auto r = sfqctl_run({"simulate", "--set", "pattern.kind=bits", "--set",
                             "pattern.bits=\"0000000000\"", "--set", "target_angle_rad=0"});
  REQUIRE(r.code == 0);
  const auto res = r.report().at("result");
  CHECK(res.at("avg_gate_fidelity").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.at("pulse_count").get<int>() == 0);
}

TEST_CASE("simulate: two-level trajectory stays in the xz plane") {
  const auto dir = scratch_dir("trajectory");
  const auto r = sfqctl_run({"simulate", "--set", "transmon.levels=2", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(slurp(dir / "trajectory.csv"));
  REQUIRE(rows.size() > 10);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 5);
    CHECK(std::abs(row[2]) < 1e-6);
    CHECK(row[4] == doctest::Approx(0.0));
  }
  // Ends near the equator after a pi/2 rotation.
  CHECK(std::abs(rows.back()[3]) < 0.05);
}

TEST_CASE("simulate: csv stdout carries the resolved config") {
  const auto r = sfqctl_run({"simulate", "--format", "csv", "--set", "clock.ticks=120"});
  REQUIRE(r.code == 0);
  const auto first = r.out.substr(0, r.out.find('\n'));
  REQUIRE(first.rfind("# sfqctl simulate config: ", 0) == 0);
  const auto echoed = json::parse(first.substr(first.find('{')));
  CHECK(echoed.at("clock").at("ticks") == 120);
  CHECK(echoed.at("transmon").at("levels") == 3);
  CHECK(echoed.contains("delta_theta_rad"));
  CHECK(r.out.find("time,bloch_x,bloch_y,bloch_z,pop_leak") != std::string::npos);
}

TEST_CASE("optimize: identical seeds give byte-identical outputs across thread counts") {
  const std::vector<std::string> common{"optimize", "--seed", "7", "--set", "clock.ticks=80",
                                        "--set", "ga.population=24", "--set", "ga.generations=15"};
  auto with = [&](const std::string& dir, const std::string& threads) {
    auto args = common;
    args.insert(args.end(), {"--threads", threads, "--out", dir});
    return sfqctl_run(args);
  };
  const auto a = scratch_dir("opt_a"), b = scratch_dir("opt_b"), c = scratch_dir("opt_c");
  const auto ra = with(a.string(), "1"), rb = with(b.string(), "1"), rc = with(c.string(), "3");
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  REQUIRE(rc.code == 0);
  for (const char* f : {"best_pattern.txt", "history.jsonl"}) {
    CHECK(slurp(a / f) == slurp(b / f));
    CHECK(slurp(a / f) == slurp(c / f));
  }
  CHECK(ra.report().at("result") == rc.report().at("result"));
  CHECK(ra.out == rb.out);
}

TEST_CASE("optimize: a short search in 20 ns beats the resonant train tenfold") {
  const auto r = sfqctl_run({"optimize", "--config", config_path("optimize_20ns.json"), "--set",
                             "ga.generations=120", "--set", "check_levels=[]"});
  REQUIRE(r.code == 0);
  const auto res = r.report().at("result");
  CHECK(res.at("duration_s").get<double>() == doctest::Approx(20e-9).epsilon(1e-6));
  CHECK(res.at("gain").get<double>() >= 10.0);
}

TEST_CASE("optimize: register scan infidelity does not increase with size") {
  const auto r = sfqctl_run({"optimize", "--set", "mode=scan", "--set", "scan.tip_angles_rad=[0.0628318531]",
                             "--set", "scan.substeps=[4]", "--set", "scan.register_bits=[40,80,120]",
                             "--set", "ga.population=30", "--set", "ga.generations=30"});
  REQUIRE(r.code == 0);
  const auto rows = r.report().at("result").at("rows");
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].at("infidelity").get<double>() <= rows[i - 1].at("infidelity").get<double>());
  }
}

TEST_CASE("pgu: two registers stream back exactly; junction counts") {
  const auto dir = scratch_dir("pgu");
  const auto r = sfqctl_run({"pgu", "--config", config_path("pgu_two_registers.json"), "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto res = r.report().at("result");
  CHECK(res.at("stream_matches_patterns") == true);
  CHECK(res.at("stream_ticks") == 80);
  CHECK(res.at("junctions").at("mux") == 600);
  CHECK(res.at("junctions").at("demux") == 113);
  const auto cfg = json::parse(slurp(config_path("pgu_two_registers.json")));
  const std::string expected = cfg["patterns"][0].get<std::string>() + cfg["patterns"][1].get<std::string>();
  const auto rows = csv_rows(slurp(dir / "stream.csv"));
  REQUIRE(rows.size() == expected.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i][0] == static_cast<double>(i));
    CHECK(rows[i][1] == (expected[i] == '1' ? 1.0 : 0.0));
  }
}

TEST_CASE("pgu: a single register passes through unchanged") {
  const auto r = sfqctl_run({"pgu", "--set", "patterns=[\"1101\"]", "--set", "readout_mode=p2s",
                             "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0][1] == 1.0);
  CHECK(rows[1][1] == 1.0);
  CHECK(rows[2][1] == 0.0);
  CHECK(rows[3][1] == 1.0);
}

TEST_CASE("pgu: mismatched register lengths are a config error") {
  const auto r = sfqctl_run({"pgu", "--set", "patterns=[\"1101\",\"10\"]"});
  CHECK(r.code == 2);
  CHECK(r.error().at("field") == "patterns[1]");
}

TEST_CASE("measure: operating point fidelity and Monte Carlo agreement") {
  const auto r = sfqctl_run({"measure", "--config", config_path("measure_operating_point.json")});
  REQUIRE(r.code == 0);
  const auto res = r.report().at("result");
  CHECK(res.at("closed_form").at("fidelity").get<double>() == doctest::Approx(0.92).epsilon(1e-6));
  CHECK(std::abs(res.at("monte_carlo").at("z_score").get<double>()) < 4.0);
}

TEST_CASE("measure: ideal detector is perfect and the Rabi fit recovers its visibility") {
  const auto r = sfqctl_run({"measure", "--set", "model.bright_mean_photons=40", "--set",
                             "model.dark_residual_photons=0", "--set", "model.per_photon_efficiency=1",
                             "--set", "model.dark_click_probability=0", "--set", "rabi.shots=5000"});
  REQUIRE(r.code == 0);
  const auto res = r.report().at("result");
  CHECK(res.at("closed_form").at("fidelity").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  // Binomial noise on 41 points of 5000 shots moves the fitted amplitude by ~0.01.
  CHECK(res.at("rabi").at("fitted_visibility").get<double>() == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("budget: defaults and heterodyne comparison") {
  const auto r = sfqctl_run({"budget", "--config", config_path("budget_1e8.json")});
  REQUIRE(r.code == 0);
  const auto res = r.report().at("result");
  const auto& mk = res.at("stages").at(0);
  CHECK(mk.at("stage") == "millikelvin");
  CHECK(mk.at("within_capacity") == true);
  double sum = 0.0;
  for (const auto& l : mk.at("lines")) sum += l.at("watts").get<double>();
  CHECK(mk.at("total_w").get<double>() == doctest::Approx(sum).epsilon(1e-8));
  CHECK(res.at("heterodyne").at("hemt_total_w").get<double>() == doctest::Approx(100.0));
  CHECK(res.at("heterodyne").at("twpa_total_w").get<double>() == doctest::Approx(0.1));
}

TEST_CASE("budget: no qubits and no lines dissipate nothing") {
  const auto r = sfqctl_run({"budget", "--set", "qubits=0", "--set", "wiring.lines=0"});
  REQUIRE(r.code == 0);
  const auto res = r.report().at("result");
  CHECK(res.at("grand_total_w").get<double>() == 0.0);
  CHECK(res.at("junction_total").get<double>() == 0.0);
  CHECK(res.at("heterodyne").at("hemt_total_w").get<double>() == 0.0);
}

TEST_CASE("config errors name the field and exit 2") {
  struct Bad {
    std::vector<std::string> args;
    std::string field;
  };
  const std::vector<Bad> cases{
      {{"simulate", "--set", "transmon.levels=1"}, "transmon.levels"},
      {{"simulate", "--set", "transmon.f01_hz=-5"}, "transmon.f01_hz"},
      {{"simulate", "--set", "pattern.kind=spiral"}, "pattern.kind"},
      {{"simulate", "--set", "pattern.kind=bits", "--set", "pattern.bits=\"10x1\""}, "pattern.bits"},
      {{"simulate", "--set", "transmon.colour=1"}, "transmon.colour"},
      {{"optimize", "--set", "ga.crossover_rate=1.5"}, "ga.crossover_rate"},
      {{"measure", "--set", "model.per_photon_efficiency=2"}, "model.per_photon_efficiency"},
      {{"budget", "--set", "wiring.t_cold_k=10"}, "wiring.t_cold_k"},
      {{"budget", "--set", "extra=1"}, "extra"},
      {{"simulate", "--set", "=3"}, "--set"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.field);
    const auto r = sfqctl_run(c.args);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    const auto e = r.error();
    CHECK(e.at("kind") == "config");
    CHECK(e.at("field") == c.field);
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(sfqctl_run({}).code == 2);
  CHECK(sfqctl_run({"transmogrify"}).code == 2);
  CHECK(sfqctl_run({"simulate", "--format", "xml"}).code == 2);
  CHECK(sfqctl_run({"simulate", "--config", "/nonexistent/file.json"}).code == 2);
  const auto r = sfqctl_run({"simulate", "--threads", "0"});
  CHECK(r.code == 2);
  CHECK(r.error().at("kind") == "usage");
}

TEST_CASE("malformed config file is a config error") {
  const auto dir = scratch_dir("badjson");
  std::ofstream(dir / "bad.json") << "{\"transmon\": ";
  const auto r = sfqctl_run({"simulate", "--config", (dir / "bad.json").string()});
  CHECK(r.code == 2);
  CHECK(r.error().at("field") == "--config");
}

TEST_CASE("overrides: --set beats the file and flags beat --set") {
  const auto dir = scratch_dir("override");
  std::ofstream(dir / "c.json") << R"({"seed": 5, "clock": {"ticks": 110}, "transmon": {"levels": 4}})";
  const auto r = sfqctl_run({"simulate", "--config", (dir / "c.json").string(), "--set", "clock.ticks=130",
                             "--set", "seed=6", "--seed", "9"});
  REQUIRE(r.code == 0);
  const auto cfg = r.report().at("config");
  CHECK(cfg.at("seed") == 9);
  CHECK(cfg.at("clock").at("ticks") == 130);
  CHECK(cfg.at("transmon").at("levels") == 4);
}

TEST_CASE("reports print at most nine significant digits") {
  const auto sim = sfqctl_run({"simulate"});
  const auto bud = sfqctl_run({"budget"});
  const auto csv = sfqctl_run({"simulate", "--format", "csv"});
  REQUIRE(sim.code == 0);
  REQUIRE(bud.code == 0);
  REQUIRE(csv.code == 0);
  CHECK(max_significant_digits(sim.out) <= 9);
  CHECK(max_significant_digits(bud.out) <= 9);
  CHECK(max_significant_digits(csv.out) <= 9);
  CHECK(sfqctl::to_text(json(0.031415926535897934)) == "0.0314159265");
}

TEST_CASE("--out writes the report next to the datasets") {
  const auto dir = scratch_dir("out");
  const auto r = sfqctl_run({"measure", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(json::parse(slurp(dir / "report.json")) == r.report());
  CHECK(fs::exists(dir / "rabi.csv"));
}
