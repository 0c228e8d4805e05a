#pragma once

#include <cstdint>
#include <vector>

#include "sfq/genetic.hpp"
#include "sfq/random.hpp"

namespace sfq {

struct ScanRow {
  double tip_angle_rad = 0.0;
  double substeps = 0.0;
  int register_bits = 0;
  double duration_periods = 0.0;
  double infidelity = 0.0;
};

/// Best GA infidelity for every (tip angle, substeps, register size). Sizes
/// are visited in ascending order and each search is seeded with the
/// resonant pattern (when it fits) and with the previous size's best pattern
/// zero-padded, so infidelity never increases with register size.
std::vector<ScanRow> scan_register_size(const TransmonSpec& spec, const QubitGate& target,
                                        const std::vector<double>& tip_angles,
                                        const std::vector<double>& substeps,
                                        std::vector<int> sizes, const GAConfig& ga);

struct JitterStats {
  double noiseless = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation over trials
  int trials = 0;

  double standard_error() const;
};

/// Monte Carlo over Gaussian pulse timing offsets. Trial t draws its offsets
/// from a stream seeded by (rng_seed, t), so runs with different sigma but the
/// same seed share their random numbers.
JitterStats jitter_robustness(const PulsePattern& pattern, const TransmonSpec& spec,
                              const QubitGate& target, double delta_theta, double sigma,
                              int trials, std::uint64_t rng_seed);

}  // namespace sfq
