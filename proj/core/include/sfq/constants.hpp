#pragma once

namespace sfq {

/// CODATA 2018 exact SI values.
struct PhysicalConstants {
  const double flux_quantum = 2.067833848e-15;     // Wb, h / 2e
  const double reduced_planck = 1.054571817e-34;   // J s
  const double planck = 6.62607015e-34;            // J s
  const double elementary_charge = 1.602176634e-19;  // C
};

inline constexpr PhysicalConstants kConstants{};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace sfq
