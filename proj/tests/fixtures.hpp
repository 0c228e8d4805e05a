#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sfq/pattern.hpp"
#include "sfq/transmon.hpp"
#include "sfq/two_qubit.hpp"

namespace fixture {

// 5 GHz transmon with 200 MHz (4%) anharmonicity, C = 100 fF, C_c = 100 aF.
inline sfq::TransmonSpec transmon(int levels = 3) {
  return sfq::TransmonSpec::from_hz(levels, 5e9, 200e6);
}

// Two-qubit operating point found by sweeping n2 at J / 2 pi = 20 MHz with a
// 64-substep clock: conditional phase within 5e-3 of pi and |11> return above
// 0.999 at d = 4.
inline constexpr double kCzCouplingHz = 20e6;
inline constexpr int kCzPulses = 1772;
inline constexpr int kCzSubsteps = 64;

inline sfq::TwoTransmonSpec cz_pair(int levels = 4) {
  return sfq::tuned_cz_pair(transmon(levels), sfq::kTwoPi * 200e6, sfq::kTwoPi * kCzCouplingHz);
}

// Random pattern with `pulses` set bits, never on tick 0 or the last tick.
inline sfq::PulsePattern random_pattern(const sfq::ClockGrid& grid, int pulses,
                                        std::mt19937_64& rng) {
  sfq::Bits bits(static_cast<std::size_t>(grid.n_ticks), 0);
  std::uniform_int_distribution<int> pick(1, grid.n_ticks - 2);
  int placed = 0;
  while (placed < pulses) {
    auto& b = bits[static_cast<std::size_t>(pick(rng))];
    if (!b) {
      b = 1;
      ++placed;
    }
  }
  return sfq::PulsePattern(grid, std::move(bits));
}

}  // namespace fixture
