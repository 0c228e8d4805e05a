#include "sfq/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sfq/timing.hpp"

namespace sfq {

ClockGrid ClockGrid::for_qubit(const TransmonSpec& spec, double substeps, int n_ticks) {
  spec.validate();
  ClockGrid grid;
  grid.substeps_per_period = substeps;
  grid.clock_frequency = substeps / spec.period();
  grid.n_ticks = n_ticks;
  grid.validate();
  return grid;
}

void ClockGrid::validate() const {
  if (!(std::isfinite(clock_frequency) && clock_frequency > 0.0)) {
    throw std::invalid_argument("ClockGrid: clock_frequency must be positive");
  }
  if (!(substeps_per_period >= 1.0)) {
    throw std::invalid_argument("ClockGrid: clock must not be slower than the qubit");
  }
  if (n_ticks < 1 || n_ticks > kMaxTicks) {
    throw std::invalid_argument("ClockGrid: n_ticks must be in [1, 100000]");
  }
}

PulsePattern::PulsePattern(ClockGrid g, Bits b) : grid(g), bits(std::move(b)) {
  grid.validate();
  if (bits.size() != static_cast<std::size_t>(grid.n_ticks)) {
    throw std::invalid_argument("PulsePattern: bit count differs from n_ticks");
  }
  for (auto bit : bits) {
    if (bit > 1) throw std::invalid_argument("PulsePattern: bits must be 0 or 1");
  }
}

std::size_t PulsePattern::pulse_count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::string PulsePattern::to_string() const {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) s[i] = '1';
  }
  return s;
}

PulsePattern PulsePattern::from_string(const ClockGrid& grid, std::string_view text) {
  Bits bits(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw std::invalid_argument("PulsePattern: expected only '0' and '1'");
    }
    bits[i] = text[i] == '1' ? 1 : 0;
  }
  return PulsePattern(grid, std::move(bits));
}

PulsePattern resonant_pattern(const TransmonSpec& spec, const ClockGrid& grid, double target_angle,
                              double delta_theta) {
  spec.validate();
  grid.validate();
  if (!(std::isfinite(delta_theta) && delta_theta > 0.0)) {
    throw std::invalid_argument("resonant_pattern: delta_theta must be positive");
  }
  if (!(std::isfinite(target_angle) && target_angle >= 0.0)) {
    throw std::invalid_argument("resonant_pattern: target_angle must be >= 0");
  }
  const long count = std::lround(target_angle / delta_theta);
  PulsePattern pattern(grid);
  if (count == 0) return pattern;

  const double ticks_per_period = grid.clock_frequency * spec.period();
  if (nearest_tick(count * ticks_per_period) > grid.n_ticks) {
    throw CapacityError("resonant_pattern: " + std::to_string(count) +
                        " qubit periods do not fit in " + std::to_string(grid.n_ticks) +
                        " ticks");
  }
  for (long k = 0; k < count; ++k) {
    const auto tick = nearest_tick(k * ticks_per_period);
    pattern.bits[static_cast<std::size_t>(tick)] = 1;
  }
  return pattern;
}

std::vector<PulseEvent> pattern_to_events(const PulsePattern& pattern, double jitter_sigma,
                                          std::uint64_t rng_seed) {
  if (!(jitter_sigma >= 0.0)) {
    throw std::invalid_argument("pattern_to_events: jitter_sigma must be >= 0");
  }
  std::vector<PulseEvent> events;
  events.reserve(pattern.pulse_count());
  const double tick = pattern.grid.tick();
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> normal(0.0, jitter_sigma > 0.0 ? jitter_sigma : 1.0);
  for (std::size_t i = 0; i < pattern.bits.size(); ++i) {
    if (!pattern.bits[i]) continue;
    PulseEvent e;
    e.nominal_time = static_cast<double>(i) * tick;
    if (jitter_sigma > 0.0) e.jitter_offset = normal(rng);
    events.push_back(e);
  }
  if (jitter_sigma > 0.0) {
    std::stable_sort(events.begin(), events.end(),
                     [](const PulseEvent& a, const PulseEvent& b) { return a.time() < b.time(); });
  }
  return events;
}

FidelityReport evaluate_pattern(const PulsePattern& pattern, const TransmonSpec& spec,
                                const QubitGate& target, double delta_theta) {
  const auto events = pattern_to_events(pattern);
  const double duration = pattern.duration();
  const UnitaryMatrix u = propagate_sequence(spec, events, delta_theta, duration);
  return gate_report(spec, u, duration, target);
}

double fitness(const PulsePattern& pattern, const TransmonSpec& spec, const QubitGate& target,
               double delta_theta) {
  return evaluate_pattern(pattern, spec, target, delta_theta).infidelity();
}

}  // namespace sfq
