#pragma once

#include <span>
#include <vector>

#include "sfq/constants.hpp"
#include "sfq/unitary.hpp"

namespace sfq {

/// Truncated weakly anharmonic oscillator driven through a coupling capacitor.
///
/// Level energies follow E_k / hbar = k * omega01 - anharmonicity * k (k - 1) / 2,
/// so anharmonicity = omega10 - omega21. All frequencies are angular (rad/s).
struct TransmonSpec {
  int levels = 3;
  double omega01 = 0.0;
  double anharmonicity = 0.0;
  double self_capacitance = 100e-15;      // F
  double coupling_capacitance = 100e-18;  // F

  static TransmonSpec from_hz(int levels, double f01_hz, double anharmonicity_hz,
                              double self_capacitance = 100e-15,
                              double coupling_capacitance = 100e-18);

  /// Qubit period 2 pi / omega01.
  double period() const;
  /// C' = C + C_c.
  double loaded_capacitance() const { return self_capacitance + coupling_capacitance; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct PulseEvent {
  double nominal_time = 0.0;  // s
  double jitter_offset = 0.0;  // s

  double time() const { return nominal_time + jitter_offset; }
};

struct PulseEnergy {
  double joules = 0.0;
  double quanta = 0.0;  // E1 / (hbar omega01)
};

/// Level energies in rad/s, E_0 = 0.
std::vector<double> spectrum(const TransmonSpec& spec);

/// Rotation angle imparted by one flux quantum through C_c.
double tip_angle(const TransmonSpec& spec, const PhysicalConstants& constants = kConstants);

/// Energy deposited by one pulse into the undriven oscillator.
PulseEnergy pulse_energy(const TransmonSpec& spec,
                         const PhysicalConstants& constants = kConstants);

/// Truncated annihilation operator, <k-1|a|k> = sqrt(k).
ComplexMatrix lowering_operator(int levels);

/// exp[(delta_theta / 2)(a^dagger - a)] on `levels` states. Rejects non-finite
/// angles and |delta_theta| >= pi.
UnitaryMatrix kick_unitary(int levels, double delta_theta);
UnitaryMatrix sfq_kick_unitary(const TransmonSpec& spec, double delta_theta);

/// Diagonal lab-frame evolution exp(-i E_k t). Requires duration >= 0.
UnitaryMatrix free_evolution(const TransmonSpec& spec, double duration);

/// Ordered product of free evolution and kicks, ending with free evolution up
/// to `total_duration`. Events must be sorted by effective time and must not
/// extend past `total_duration`.
UnitaryMatrix propagate_sequence(const TransmonSpec& spec, std::span<const PulseEvent> events,
                                 double delta_theta, double total_duration);

}  // namespace sfq
