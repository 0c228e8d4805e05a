#include "commands.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "sfq/budget.hpp"
#include "sfq/constants.hpp"
#include "sfq/fabric.hpp"
#include "sfq/genetic.hpp"
#include "sfq/measurement.hpp"
#include "sfq/pattern.hpp"
#include "sfq/pgu.hpp"
#include "sfq/scan.hpp"
#include "sfq/transmon.hpp"
#include "sfq/two_qubit.hpp"

namespace sfqctl {

using sfq::kPi;
using sfq::kTwoPi;

namespace {

// Runs `f`, turning library argument errors into field-level config errors.
template <class F>
auto as_field(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

class Csv {
 public:
  explicit Csv(const std::string& header) { s_ << header << '\n'; }
  template <class... T>
  void row(const T&... cells) {
    bool first = true;
    ((s_ << (first ? "" : ",") << cell(cells), first = false), ...);
    s_ << '\n';
  }
  std::string str() const { return s_.str(); }

 private:
  static std::string cell(double x) { return format_number(x); }
  static std::string cell(const std::string& x) { return x; }
  template <class I>
    requires std::is_integral_v<I>
  static std::string cell(I x) {
    return std::to_string(x);
  }
  std::ostringstream s_;
};

sfq::TransmonSpec read_transmon(Section& root, int default_levels) {
  auto t = root.child("transmon");
  const auto levels = t.integer("levels", default_levels, 2);
  const double f01 = t.positive("f01_hz", 5e9);
  const double alpha = t.number("anharmonicity_hz", 200e6);
  const double c = t.positive("capacitance_f", 100e-15);
  const double cc = t.non_negative("coupling_capacitance_f", 100e-18);
  root.adopt("transmon", t);
  return as_field("transmon", [&] {
    auto spec = sfq::TransmonSpec::from_hz(static_cast<int>(levels), f01, alpha, c, cc);
    spec.validate();
    return spec;
  });
}

// Defaults to the natural tip angle of the coupling capacitor.
double read_delta_theta(Section& root, const sfq::TransmonSpec& spec) {
  const auto given = root.optional_number("delta_theta_rad");
  const double dt = given ? *given : sfq::tip_angle(spec);
  if (!(dt > 0.0 && dt < kPi)) {
    throw ConfigError(root.field("delta_theta_rad"), "must be in (0, pi)");
  }
  root.put("delta_theta_rad", dt);
  return dt;
}

sfq::ClockGrid read_clock(Section& root, const sfq::TransmonSpec& spec, double substeps,
                          std::int64_t ticks) {
  auto c = root.child("clock");
  const double s = c.number("substeps", substeps);
  const auto n = c.integer("ticks", ticks, 1);
  root.adopt("clock", c);
  return as_field("clock", [&] {
    return sfq::ClockGrid::for_qubit(spec, s, static_cast<int>(n));
  });
}

sfq::GAConfig read_ga(Section& root, std::uint64_t seed, int threads) {
  auto g = root.child("ga");
  sfq::GAConfig cfg;
  cfg.population_size = static_cast<int>(g.integer("population", cfg.population_size, 1));
  cfg.generations = static_cast<int>(g.integer("generations", cfg.generations, 0));
  cfg.crossover_rate = g.probability("crossover_rate", cfg.crossover_rate);
  if (const auto m = g.optional_number("mutation_rate_per_bit")) {
    cfg.mutation_rate_per_bit = *m;
  }
  cfg.elite_count = static_cast<int>(g.integer("elite_count", cfg.elite_count, 0));
  cfg.tournament_size = static_cast<int>(g.integer("tournament_size", cfg.tournament_size, 1));
  cfg.rng_seed = seed;
  cfg.threads = threads;
  root.adopt("ga", g);
  as_field("ga", [&] {
    cfg.validate();
    return 0;
  });
  return cfg;
}

sfq::Bits parse_bits(const std::string& s, const std::string& field) {
  sfq::Bits bits;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw ConfigError(field, "bit strings may only contain 0 and 1");
    bits.push_back(ch == '1');
  }
  if (bits.empty()) throw ConfigError(field, "empty bit string");
  return bits;
}

json report_of(const sfq::FidelityReport& r) {
  return {{"avg_gate_fidelity", r.avg_gate_fidelity},
          {"infidelity", r.infidelity()},
          {"leakage", r.leakage},
          {"duration_s", r.duration}};
}

std::string trajectory_csv(const sfq::TransmonSpec& spec, const std::vector<sfq::PulseEvent>& events,
                           double delta_theta, double total) {
  Csv csv("time,bloch_x,bloch_y,bloch_z,pop_leak");
  const auto kick = sfq::sfq_kick_unitary(spec, delta_theta).matrix();
  sfq::ComplexVector psi = sfq::ComplexVector::Zero(spec.levels);
  psi(0) = 1.0;
  auto emit = [&](double t) {
    // Qubit amplitudes in the frame co-rotating at omega01.
    const sfq::Complex c0 = psi(0);
    const sfq::Complex c1 = psi(1) * std::polar(1.0, spec.omega01 * t);
    const sfq::Complex coherence = std::conj(c0) * c1;
    const double p0 = std::norm(c0), p1 = std::norm(c1);
    csv.row(t, 2.0 * coherence.real(), 2.0 * coherence.imag(), p0 - p1,
            std::max(0.0, 1.0 - p0 - p1));
  };
  double now = 0.0;
  emit(now);
  for (const auto& e : events) {
    psi = sfq::free_evolution(spec, e.time() - now).matrix() * psi;
    psi = kick * psi;
    now = e.time();
    emit(now);
  }
  psi = sfq::free_evolution(spec, total - now).matrix() * psi;
  emit(total);
  return csv.str();
}

CommandOutput simulate_cz(Section& root) {
  const auto spec = read_transmon(root, 4);
  auto c = root.child("cz");
  const double j = c.positive("coupling_hz", 20e6);
  const double alpha_a = c.number("alpha_a_hz", 200e6);
  const auto pulses = c.integer("pulses", 1772, 1);
  const auto substeps = c.integer("substeps", 64, 1);
  root.adopt("cz", c);
  root.finish();

  const auto pair =
      as_field("cz", [&] { return sfq::tuned_cz_pair(spec, kTwoPi * alpha_a, kTwoPi * j); });
  const auto r = as_field("cz", [&] {
    return sfq::cz_protocol(pair, static_cast<int>(pulses), static_cast<int>(substeps));
  });
  CommandOutput out;
  out.config = root.resolved();
  out.result = {
      {"conditional_phase_rad", r.conditional_phase},
      {"distance_from_pi_rad", std::abs(std::remainder(r.conditional_phase - kPi, kTwoPi))},
      {"return_population", r.return_population},
      {"drive_frequency_hz", r.drive_frequency / kTwoPi},
      {"delta_theta_rad", r.delta_theta},
      {"duration_s", r.duration},
      {"doublet_splitting_hz", r.doublet_splitting / kTwoPi},
      {"below_selectivity", r.below_selectivity},
  };
  return out;
}

}  // namespace

CommandOutput run_simulate(const json& config) {
  Section root(config, "");
  const auto seed = root.seed("seed", 1);
  root.integer("threads", 1, 1);
  if (root.choice("mode", "single", {"single", "cz"}) == "cz") return simulate_cz(root);

  const auto spec = read_transmon(root, 3);
  const double target = root.number("target_angle_rad", kPi / 2);
  const double dt = read_delta_theta(root, spec);

  auto p = root.child("pattern");
  const auto kind = p.choice("kind", "resonant", {"resonant", "bits", "file"});
  std::string bits;
  std::string count_rule;
  if (kind == "resonant") {
    count_rule = p.choice("count_rule", "round", {"round", "ceil"});
  } else if (kind == "bits") {
    bits = p.text("bits", "");
    parse_bits(bits, p.field("bits"));
  } else {
    const auto path = p.text("path", "");
    const auto lines = read_lines(path);
    if (lines.size() != 1) throw ConfigError(p.field("path"), "expected exactly one bit string");
    bits = lines.front();
    parse_bits(bits, p.field("path"));
  }
  root.adopt("pattern", p);

  const auto grid =
      read_clock(root, spec, 1.0, bits.empty() ? 100 : static_cast<std::int64_t>(bits.size()));
  const double jitter = root.non_negative("jitter_sigma_s", 0.0);
  const auto trials = root.integer("jitter_trials", 0, 0);
  const bool trajectory = root.flag("trajectory", true);
  root.finish();

  sfq::PulsePattern pattern;
  if (kind == "resonant") {
    // ceil: the smallest count that reaches the target angle.
    double angle = target;
    if (count_rule == "ceil") angle = std::ceil(target / dt - 1e-12) * dt;
    pattern = sfq::resonant_pattern(spec, grid, angle, dt);
  } else {
    pattern = as_field("pattern", [&] { return sfq::PulsePattern::from_string(grid, bits); });
  }

  const auto target_gate = sfq::y_rotation(target);
  const auto events = sfq::pattern_to_events(pattern, jitter, seed);
  const auto u = sfq::propagate_sequence(spec, events, dt, pattern.duration());
  const auto report = sfq::gate_report(spec, u, pattern.duration(), target_gate);

  CommandOutput out;
  out.config = root.resolved();
  out.result = report_of(report);
  out.result["pulse_count"] = pattern.pulse_count();
  out.result["delta_theta_rad"] = dt;
  out.result["pulse_energy_quanta"] = sfq::pulse_energy(spec).quanta;
  out.result["pattern"] = pattern.to_string();
  if (trials > 0) {
    const auto js = sfq::jitter_robustness(pattern, spec, target_gate, dt, jitter,
                                           static_cast<int>(trials), seed);
    out.result["jitter"] = {{"sigma_s", jitter},           {"trials", js.trials},
                            {"noiseless", js.noiseless},   {"mean_infidelity", js.mean},
                            {"stddev", js.stddev},         {"standard_error", js.standard_error()}};
  }
  if (trajectory) {
    out.datasets.push_back({"trajectory.csv", trajectory_csv(spec, events, dt, pattern.duration())});
    out.primary = "trajectory.csv";
  }
  return out;
}

CommandOutput run_optimize(const json& config) {
  Section root(config, "");
  const auto seed = root.seed("seed", 1);
  const auto threads = static_cast<int>(root.integer("threads", 1, 1));
  const auto mode = root.choice("mode", "single", {"single", "scan"});
  const auto spec = read_transmon(root, 3);
  const double target = root.number("target_angle_rad", kPi / 2);
  const auto target_gate = sfq::y_rotation(target);
  CommandOutput out;

  if (mode == "scan") {
    auto s = root.child("scan");
    const auto tips = s.numbers("tip_angles_rad", {kPi / 50, kPi / 100});
    const auto subs = s.numbers("substeps", {8.0});
    const auto sizes_d = s.numbers("register_bits", {50, 100, 150, 200, 250});
    root.adopt("scan", s);
    std::vector<int> sizes;
    for (double x : sizes_d) {
      if (x < 1 || std::floor(x) != x) {
        throw ConfigError("scan.register_bits", "sizes must be positive integers");
      }
      sizes.push_back(static_cast<int>(x));
    }
    const auto ga = read_ga(root, seed, threads);
    root.finish();
    const auto rows = as_field("scan", [&] {
      return sfq::scan_register_size(spec, target_gate, tips, subs, sizes, ga);
    });
    Csv csv("tip_angle_rad,substeps,register_bits,duration_periods,infidelity");
    json jrows = json::array();
    for (const auto& r : rows) {
      csv.row(r.tip_angle_rad, r.substeps, r.register_bits, r.duration_periods, r.infidelity);
      jrows.push_back({{"tip_angle_rad", r.tip_angle_rad},
                       {"substeps", r.substeps},
                       {"register_bits", r.register_bits},
                       {"duration_periods", r.duration_periods},
                       {"infidelity", r.infidelity}});
    }
    out.config = root.resolved();
    out.result = {{"rows", jrows}};
    out.datasets.push_back({"scan.csv", csv.str()});
    out.primary = "scan.csv";
    return out;
  }

  const double dt = read_delta_theta(root, spec);
  const auto grid = read_clock(root, spec, 8.0, 800);
  const bool seed_resonant = root.flag("seed_resonant", true);
  const auto checks = root.numbers("check_levels", {});
  const auto ga = read_ga(root, seed, threads);
  root.finish();

  std::vector<sfq::PulsePattern> seeds;
  json resonant = nullptr;
  try {
    const auto r = sfq::resonant_pattern(spec, grid, target, dt);
    resonant = sfq::fitness(r, spec, target_gate, dt);
    if (seed_resonant) seeds.push_back(r);
  } catch (const sfq::CapacityError&) {
    // The resonant train does not fit; search unseeded.
  }
  const auto r = sfq::ga_search(ga, grid, {spec, target_gate, dt}, seeds);

  json check_rows = json::array();
  for (double lv : checks) {
    if (lv < 2 || std::floor(lv) != lv) {
      throw ConfigError("check_levels", "levels must be integers >= 2");
    }
    auto other = spec;
    other.levels = static_cast<int>(lv);
    check_rows.push_back(
        {{"levels", other.levels}, {"infidelity", sfq::fitness(r.best_pattern, other, target_gate, dt)}});
  }

  std::string history;
  for (const auto& h : r.history) {
    history += to_text({{"generation", h.generation}, {"best", h.best}, {"mean", h.mean}}) + "\n";
  }
  out.config = root.resolved();
  out.result = {
      {"register_bits", grid.n_ticks},
      {"duration_s", grid.duration()},
      {"delta_theta_rad", dt},
      {"resonant_infidelity", resonant},
      {"best_infidelity", r.best_report.infidelity()},
      {"best_leakage", r.best_report.leakage},
      {"gain", resonant.is_null() ? json(nullptr) : json(resonant.get<double>() / r.best_report.infidelity())},
      {"pulse_count", r.best_pattern.pulse_count()},
      {"evaluations", r.evaluations},
      {"checks", check_rows},
  };
  out.datasets.push_back({"best_pattern.txt", r.best_pattern.to_string() + "\n"});
  out.datasets.push_back({"history.jsonl", history});
  out.primary = "history.jsonl";
  return out;
}

CommandOutput run_pgu(const json& config) {
  Section root(config, "");
  root.seed("seed", 1);
  root.integer("threads", 1, 1);
  auto lines = root.texts("patterns");
  const auto file = root.text("patterns_file", "");
  if (!file.empty()) {
    if (!lines.empty()) throw ConfigError("patterns_file", "give patterns or patterns_file, not both");
    lines = read_lines(file);
  }
  if (lines.empty()) throw ConfigError("patterns_file", "no register patterns given");
  const double fast_clock = root.positive("fast_clock_hz", 40e9);
  const auto mode = root.choice("readout_mode", "merger_sync", {"merger_sync", "p2s"});
  auto m = root.child("mux");
  const auto mux_channels = m.integer("channels", 100, 1);
  const auto variant = m.choice("variant", "merger_tree", {"merger_tree", "squid_stack"});
  root.adopt("mux", m);
  auto d = root.child("demux");
  const auto demux_channels = d.integer("channels", 10, 1);
  root.adopt("demux", d);
  root.finish();

  std::vector<sfq::Bits> patterns;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    patterns.push_back(parse_bits(lines[i], "patterns[" + std::to_string(i) + "]"));
    if (patterns.back().size() != patterns.front().size()) {
      throw ConfigError("patterns[" + std::to_string(i) + "]",
                        "all registers must have the same length");
    }
  }
  const int n = static_cast<int>(patterns.front().size());
  const sfq::PGUConfig pgu{n, static_cast<int>(patterns.size()), fast_clock,
                           mode == "p2s" ? sfq::ReadoutMode::p2s : sfq::ReadoutMode::merger_sync};
  std::vector<sfq::S2PRegister> regs;
  sfq::Bits expected;
  for (const auto& p : patterns) {
    regs.push_back(sfq::load_pattern(sfq::S2PRegister(n), p));
    expected.insert(expected.end(), p.begin(), p.end());
  }
  const auto stream = sfq::stream_pgu(pgu, regs);

  Csv csv("tick,bit");
  bool exact = stream.size() == expected.size();
  std::int64_t pulses = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    csv.row(stream[i].tick, static_cast<int>(stream[i].bit));
    pulses += stream[i].bit;
    exact = exact && i < expected.size() && stream[i].bit == expected[i];
  }
  if (!exact) throw std::runtime_error("pgu: stream does not reproduce the loaded patterns");

  const auto mv = variant == "merger_tree" ? sfq::MuxVariant::merger_tree : sfq::MuxVariant::squid_stack;
  CommandOutput out;
  out.config = root.resolved();
  out.result = {
      {"register_bits", n},
      {"register_count", patterns.size()},
      {"fast_clock_hz", fast_clock},
      {"readout_clock_hz", pgu.readout_clock()},
      {"stream_ticks", stream.size()},
      {"stream_pulses", pulses},
      {"duration_s", static_cast<double>(stream.size()) / fast_clock},
      {"stream_matches_patterns", exact},
      {"junctions",
       {{"mux", sfq::mux_junctions({mux_channels, mv})},
        {"demux", sfq::demux_junctions({demux_channels})},
        {"p2s_overhead", n >= 2 ? json(sfq::p2s_junction_overhead(n)) : json(nullptr)}}},
  };
  out.datasets.push_back({"stream.csv", csv.str()});
  out.primary = "stream.csv";
  return out;
}

CommandOutput run_measure(const json& config) {
  Section root(config, "");
  const auto seed = root.seed("seed", 1);
  root.integer("threads", 1, 1);
  const auto defaults = sfq::calibrated_jpm_model();
  auto m = root.child("model");
  sfq::JPMClickModel model;
  model.bright_mean_photons = m.non_negative("bright_mean_photons", defaults.bright_mean_photons);
  model.dark_residual_photons = m.non_negative("dark_residual_photons", defaults.dark_residual_photons);
  model.per_photon_efficiency = m.probability("per_photon_efficiency", defaults.per_photon_efficiency);
  model.dark_click_probability =
      m.probability("dark_click_probability", defaults.dark_click_probability);
  root.adopt("model", m);
  as_field("model", [&] {
    model.validate();
    return 0;
  });
  const double p1 = root.probability("excited_probability", 0.5);
  const auto shots = root.integer("shots", 100000, 1);
  auto r = root.child("rabi");
  const auto points = r.integer("points", 41, 0);
  const double theta_max = r.number("theta_max_rad", kTwoPi);
  const auto rabi_shots = r.integer("shots", 2000, 1);
  root.adopt("rabi", r);
  std::optional<sfq::DispersiveParams> disp;
  if (root.has("dispersive")) {
    auto d = root.child("dispersive");
    disp = sfq::DispersiveParams{kTwoPi * d.number("coupling_hz", 100e6),
                                 kTwoPi * d.number("detuning_hz", 1e9)};
    root.adopt("dispersive", d);
  }
  root.finish();

  const double pb = sfq::click_probability(model, sfq::Pointer::bright);
  const double pd = sfq::click_probability(model, sfq::Pointer::dark);
  const double expected = sfq::expected_click_rate(model, p1);
  const auto c = sfq::measurement_shot(model, p1, seed, shots);
  const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(shots));

  CommandOutput out;
  out.result["closed_form"] = {{"p_click_bright", pb},
                               {"p_click_dark", pd},
                               {"fidelity", sfq::single_shot_fidelity(model)},
                               {"expected_click_rate", expected}};
  out.result["monte_carlo"] = {
      {"shots", c.shots},
      {"clicks", c.clicks},
      {"click_rate", c.click_rate()},
      {"excited", c.excited},
      {"clicks_when_excited", c.clicks_when_excited},
      {"standard_error", se},
      {"z_score", se > 0.0 ? json((c.click_rate() - expected) / se) : json(nullptr)},
  };

  if (points > 0) {
    std::vector<double> thetas;
    for (std::int64_t i = 0; i < points; ++i) {
      thetas.push_back(points == 1 ? 0.0 : theta_max * static_cast<double>(i) / (points - 1));
    }
    const auto scan = sfq::rabi_scan(model, thetas, rabi_shots, seed);
    Csv csv("theta_rad,click_rate,shots");
    // Least squares r = a + b cos(theta); visibility 2 |b|.
    double s1 = 0, sc = 0, scc = 0, sr = 0, src = 0;
    for (const auto& pt : scan) {
      csv.row(pt.theta_rad, pt.click_rate, pt.shots);
      const double co = std::cos(pt.theta_rad);
      s1 += 1;
      sc += co;
      scc += co * co;
      sr += pt.click_rate;
      src += pt.click_rate * co;
    }
    const double den = s1 * scc - sc * sc;
    json visibility = nullptr;
    if (den > 1e-12) visibility = 2.0 * std::abs((s1 * src - sc * sr) / den);
    out.result["rabi"] = {{"points", scan.size()}, {"shots_per_point", rabi_shots},
                          {"fitted_visibility", visibility}};
    out.datasets.push_back({"rabi.csv", csv.str()});
    out.primary = "rabi.csv";
  }
  if (disp) {
    const auto s = as_field("dispersive", [&] { return sfq::dispersive_shift(*disp); });
    out.result["dispersive"] = {{"chi_hz", s.chi / kTwoPi}, {"ringup_time_s", s.ringup_time}};
  }
  out.config = root.resolved();
  return out;
}

namespace {

sfq::SubsystemSpec read_subsystem(Section& root, const std::string& key, sfq::SubsystemSpec s) {
  auto c = root.child(key);
  s.junctions_per_channel = c.non_negative("junctions_per_channel", s.junctions_per_channel);
  s.channels = c.non_negative("channels", s.channels);
  s.clock = c.non_negative("clock_hz", s.clock);
  s.duty_cycle = c.probability("duty_cycle", s.duty_cycle);
  s.activity = c.probability("activity", s.activity);
  s.junction.critical_current = c.positive("critical_current_a", s.junction.critical_current);
  s.junction.bias_fraction = c.probability("bias_fraction", s.junction.bias_fraction);
  root.adopt(key, c);
  as_field(key, [&] {
    s.validate();
    return 0;
  });
  return s;
}

}  // namespace

CommandOutput run_budget(const json& config) {
  Section root(config, "");
  root.seed("seed", 1);
  root.integer("threads", 1, 1);
  sfq::BudgetConfig b;
  b.qubits = root.non_negative("qubits", b.qubits);
  // One interface channel and one PGU channel per qubit unless given.
  b.interface_chip.channels = b.qubits;
  b.pgu.channels = b.qubits;
  b.interface_chip = read_subsystem(root, "interface_chip", b.interface_chip);
  b.pgu = read_subsystem(root, "pgu", b.pgu);

  auto w = root.child("wiring");
  b.lines = w.non_negative("lines", b.lines);
  b.trace_width = w.non_negative("trace_width_m", b.trace_width);
  b.trace_spacing = w.non_negative("trace_spacing_m", b.trace_spacing);
  b.dielectric_thickness = w.non_negative("dielectric_thickness_m", b.dielectric_thickness);
  b.metal_thickness = w.non_negative("metal_thickness_m", b.metal_thickness);
  b.groundplane_factor = w.non_negative("groundplane_factor", b.groundplane_factor);
  b.wire_length = w.positive("length_m", b.wire_length);
  b.t_hot = w.non_negative("t_hot_k", b.t_hot);
  b.t_cold = w.non_negative("t_cold_k", b.t_cold);
  root.adopt("wiring", w);
  if (b.t_cold > b.t_hot) throw ConfigError("wiring.t_cold_k", "must not exceed t_hot_k");

  auto r = root.child("readout");
  b.qubits_per_group = static_cast<int>(r.integer("qubits_per_group", b.qubits_per_group, 1));
  b.mux.channels = r.integer("mux_channels", b.mux.channels, 1);
  b.mux.variant = r.choice("mux_variant", "merger_tree", {"merger_tree", "squid_stack"}) == "merger_tree"
                      ? sfq::MuxVariant::merger_tree
                      : sfq::MuxVariant::squid_stack;
  b.demux.channels = r.integer("demux_channels", b.demux.channels, 1);
  b.demux_per_group = static_cast<int>(r.integer("demux_per_group", b.demux_per_group, 0));
  root.adopt("readout", r);

  auto h = root.child("heterodyne");
  b.hemt_power = h.non_negative("hemt_power_w", b.hemt_power);
  b.qubits_per_amp = h.positive("qubits_per_amp", b.qubits_per_amp);
  b.amps_per_hemt = h.positive("amps_per_hemt", b.amps_per_hemt);
  b.twpa_pump_dissipation = h.non_negative("twpa_pump_dissipation_w", b.twpa_pump_dissipation);
  root.adopt("heterodyne", h);

  auto f = root.child("footprint");
  b.cell_width = f.non_negative("cell_width_m", b.cell_width);
  b.cell_height = f.non_negative("cell_height_m", b.cell_height);
  b.control_width = f.non_negative("control_width_m", b.control_width);
  b.control_height = f.non_negative("control_height_m", b.control_height);
  root.adopt("footprint", f);

  auto cap = root.child("capacity");
  b.millikelvin_capacity = cap.positive("millikelvin_w", b.millikelvin_capacity);
  b.pulse_tube_capacity = cap.positive("pulse_tube_w", b.pulse_tube_capacity);
  root.adopt("capacity", cap);

  const auto grid = root.numbers("activity_grid", {});
  for (double a : grid) {
    if (a < 0.0 || a > 1.0) throw ConfigError("activity_grid", "activities must be in [0, 1]");
  }
  root.finish();

  const auto rep = sfq::build_budget(b);
  Csv csv("stage,item,watts");
  json stages = json::array();
  for (const auto& s : rep.stages) {
    json lines = json::array();
    for (const auto& l : s.lines) {
      lines.push_back({{"name", l.name}, {"watts", l.watts}});
      csv.row(s.stage, l.name, l.watts);
    }
    csv.row(s.stage, std::string("total"), s.total);
    csv.row(s.stage, std::string("capacity"), s.capacity);
    csv.row(s.stage, std::string("headroom"), s.headroom);
    stages.push_back({{"stage", s.stage},
                      {"capacity_w", s.capacity},
                      {"lines", lines},
                      {"total_w", s.total},
                      {"headroom_w", s.headroom},
                      {"within_capacity", s.headroom >= 0.0}});
  }
  json junctions = json::array();
  for (const auto& j : rep.junctions) junctions.push_back({{"name", j.name}, {"junctions", j.junctions}});

  CommandOutput out;
  out.config = root.resolved();
  out.result = {
      {"stages", stages},
      {"grand_total_w", rep.grand_total},
      {"junctions", junctions},
      {"junction_total", rep.junction_total},
      {"heterodyne",
       {{"hemt_count", rep.heterodyne.hemt_count},
        {"hemt_total_w", rep.heterodyne.hemt_total},
        {"twpa_count", rep.heterodyne.twpa_count},
        {"twpa_total_w", rep.heterodyne.twpa_total}}},
      {"footprint",
       {{"cell_area_m2", rep.footprint.cell_area},
        {"array_area_m2", rep.footprint.array_area},
        {"control_area_m2", rep.footprint.control_area},
        {"fits", rep.footprint.fits}}},
      {"notes", rep.notes},
  };
  out.datasets.push_back({"budget.csv", csv.str()});
  out.primary = "budget.csv";
  if (!grid.empty()) {
    Csv act("technology,activity,power_w");
    for (const auto& row : sfq::activity_curves(sfq::default_technologies(), grid)) {
      act.row(row.technology, row.activity, row.power);
    }
    out.datasets.push_back({"activity.csv", act.str()});
  }
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"simulate", "optimize", "pgu", "measure", "budget"};
  return names;
}

Runner find_command(const std::string& name) {
  static const std::map<std::string, Runner> table{{"simulate", run_simulate},
                                                   {"optimize", run_optimize},
                                                   {"pgu", run_pgu},
                                                   {"measure", run_measure},
                                                   {"budget", run_budget}};
  const auto it = table.find(name);
  return it == table.end() ? nullptr : it->second;
}

}  // namespace sfqctl
