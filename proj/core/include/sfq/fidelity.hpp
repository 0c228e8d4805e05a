#pragma once

#include <Eigen/Dense>

#include "sfq/transmon.hpp"
#include "sfq/unitary.hpp"

namespace sfq {

struct FidelityReport {
  double avg_gate_fidelity = 0.0;
  double leakage = 0.0;
  double duration = 0.0;  // s

  double infidelity() const { return 1.0 - avg_gate_fidelity; }
};

using QubitGate = Eigen::Matrix2cd;

/// exp(-i angle Y / 2).
QubitGate y_rotation(double angle);

/// Average gate fidelity of `actual` restricted to {|0>, |1>} against a 2x2
/// target: with M = P target^dagger actual P,
///   F = (Tr(M^dagger M) + |Tr M|^2) / 6,  leakage = 1 - Tr(M^dagger M) / 2.
/// Insensitive to the global phase of `actual`.
FidelityReport average_gate_fidelity(const UnitaryMatrix& actual, const QubitGate& target,
                                     double duration = 0.0);

/// Runtime-sized variant; throws std::invalid_argument unless `target` is a
/// 2x2 unitary.
FidelityReport average_gate_fidelity(const UnitaryMatrix& actual, const ComplexMatrix& target,
                                     double duration = 0.0);

/// Maps a lab-frame propagator over [0, duration] into the frame co-rotating
/// with the 0-1 transition: diag(exp(i k omega01 duration)) * U.
UnitaryMatrix to_rotating_frame(const TransmonSpec& spec, const UnitaryMatrix& lab,
                                double duration);

/// Rotating-frame fidelity of a lab-frame propagator.
FidelityReport gate_report(const TransmonSpec& spec, const UnitaryMatrix& lab, double duration,
                           const QubitGate& target);

}  // namespace sfq
