#pragma once

#include <span>
#include <vector>

#include "sfq/transmon.hpp"
#include "sfq/unitary.hpp"

namespace sfq {

enum class DriveTarget { A, B };

/// Two capacitively coupled transmons with exchange coupling
/// H = H_a (x) I + I (x) H_b + J (a^dagger b + a b^dagger).
/// Basis index of |i j> is i * levels_b + j.
struct TwoTransmonSpec {
  TransmonSpec qubit_a;
  TransmonSpec qubit_b;
  double coupling_j = 0.0;  // rad/s
  DriveTarget drive_target = DriveTarget::B;

  int dim() const { return qubit_a.levels * qubit_b.levels; }
  int index(int level_a, int level_b) const { return level_a * qubit_b.levels + level_b; }
  const TransmonSpec& driven() const {
    return drive_target == DriveTarget::A ? qubit_a : qubit_b;
  }
  void validate() const;
};

/// Pair tuned so that E(|0 3>) = E(|1 2>) with qubit B driven:
/// omega_a = omega_b - 2 alpha_b.
TwoTransmonSpec tuned_cz_pair(const TransmonSpec& qubit_b, double anharmonicity_a,
                              double coupling_j);

ComplexMatrix static_hamiltonian(const TwoTransmonSpec& spec);

/// Eigenbasis of the static Hamiltonian. `labels[index(i, j)]` is the column of
/// the eigenvector with the largest overlap on bare |i j>.
struct DressedBasis {
  Eigen::VectorXd energies;
  ComplexMatrix vectors;
  std::vector<int> labels;
};

DressedBasis dressed_basis(const TwoTransmonSpec& spec);

/// Kicks act on the drive target's charge operator; free evolution between
/// kicks uses the dense exponential of the static coupled Hamiltonian.
UnitaryMatrix two_qubit_propagate(const TwoTransmonSpec& spec, std::span<const PulseEvent> events,
                                  double delta_theta, double total_duration);

struct CzResult {
  double conditional_phase = 0.0;  // wrapped to (-pi, pi]
  double return_population = 0.0;  // |<11|U|11>|^2 in the dressed basis
  double drive_frequency = 0.0;    // rad/s, dressed |11> -> |+>
  double delta_theta = 0.0;        // per-pulse kick angle used
  double duration = 0.0;           // s, first to last pulse
  double doublet_splitting = 0.0;  // rad/s, E(+) - E(-)
  bool below_selectivity = false;  // n2 < omega_{11->+} / J
};

/// Drives a full Rabi cycle |11> -> |+> -> |11> with n2 pulses placed on a
/// clock with `clock_substeps` ticks per driven-qubit period. The kick angle
/// is chosen so that the n2 pulses rotate the dressed |11> <-> |+> pair by
/// exactly 2 pi. Requires at least 4 levels on both qubits.
CzResult cz_protocol(const TwoTransmonSpec& spec, int n2, int clock_substeps);

}  // namespace sfq
