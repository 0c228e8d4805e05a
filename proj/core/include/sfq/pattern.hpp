#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sfq/fidelity.hpp"
#include "sfq/transmon.hpp"

namespace sfq {

/// Thrown when a requested pattern does not fit on its clock grid.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// SFQ clock: tick k sits at time k / clock_frequency.
struct ClockGrid {
  double clock_frequency = 0.0;      // Hz
  double substeps_per_period = 0.0;  // clock_frequency * qubit period
  int n_ticks = 0;                   // register length N

  static constexpr int kMaxTicks = 100000;

  /// Grid with `substeps` ticks per qubit period.
  static ClockGrid for_qubit(const TransmonSpec& spec, double substeps, int n_ticks);

  double tick() const { return 1.0 / clock_frequency; }
  double duration() const { return n_ticks / clock_frequency; }
  /// The clock may not run slower than the qubit.
  void validate() const;
};

using Bits = std::vector<std::uint8_t>;

struct PulsePattern {
  ClockGrid grid;
  Bits bits;

  PulsePattern() = default;
  PulsePattern(ClockGrid g, Bits b);
  explicit PulsePattern(ClockGrid g) : PulsePattern(g, Bits(static_cast<std::size_t>(g.n_ticks), 0)) {}

  double duration() const { return grid.duration(); }
  std::size_t pulse_count() const;
  std::string to_string() const;

  static PulsePattern from_string(const ClockGrid& grid, std::string_view bits);
};

/// One pulse at the tick nearest each integer multiple of the qubit period,
/// round(target_angle / delta_theta) pulses starting at t = 0. Throws
/// CapacityError when the grid is shorter than that many periods.
PulsePattern resonant_pattern(const TransmonSpec& spec, const ClockGrid& grid, double target_angle,
                              double delta_theta);

/// One event per set bit. Positive `jitter_sigma` adds independent Gaussian
/// offsets drawn from a generator seeded with `rng_seed`; the result is sorted
/// by effective time.
std::vector<PulseEvent> pattern_to_events(const PulsePattern& pattern, double jitter_sigma = 0.0,
                                          std::uint64_t rng_seed = 0);

/// Rotating-frame gate report of the pattern played over its full duration.
FidelityReport evaluate_pattern(const PulsePattern& pattern, const TransmonSpec& spec,
                                const QubitGate& target, double delta_theta);

/// 1 - average gate fidelity.
double fitness(const PulsePattern& pattern, const TransmonSpec& spec, const QubitGate& target,
               double delta_theta);

}  // namespace sfq
