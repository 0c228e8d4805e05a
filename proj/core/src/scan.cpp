#include "sfq/scan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfq {

std::vector<ScanRow> scan_register_size(const TransmonSpec& spec, const QubitGate& target,
                                        const std::vector<double>& tip_angles,
                                        const std::vector<double>& substeps,
                                        std::vector<int> sizes, const GAConfig& ga) {
  if (tip_angles.empty() || substeps.empty() || sizes.empty()) {
    throw std::invalid_argument("scan_register_size: parameter lists must be nonempty");
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  // Target rotation angle about y, used only to size the resonant seed.
  const double target_angle = 2.0 * std::atan2(std::abs(target(1, 0)), std::abs(target(0, 0)));

  std::vector<ScanRow> rows;
  for (double tip : tip_angles) {
    for (double sub : substeps) {
      GateProblem problem{spec, target, tip};
      Bits previous_best;
      for (int size : sizes) {
        const ClockGrid grid = ClockGrid::for_qubit(spec, sub, size);
        std::vector<PulsePattern> seeds;
        try {
          seeds.push_back(resonant_pattern(spec, grid, target_angle, tip));
        } catch (const CapacityError&) {
          // Too short for a resonant train; the search starts from scratch.
        }
        if (!previous_best.empty()) {
          Bits padded = previous_best;
          padded.resize(static_cast<std::size_t>(size), 0);
          seeds.emplace_back(grid, std::move(padded));
        }
        if (static_cast<int>(seeds.size()) > ga.population_size) seeds.resize(1);
        const OptimizationResult result = ga_search(ga, grid, problem, seeds);
        previous_best = result.best_pattern.bits;

        ScanRow row;
        row.tip_angle_rad = tip;
        row.substeps = sub;
        row.register_bits = size;
        row.duration_periods = grid.duration() / spec.period();
        row.infidelity = result.best_report.infidelity();
        rows.push_back(row);
      }
    }
  }
  return rows;
}

double JitterStats::standard_error() const {
  return trials > 0 ? stddev / std::sqrt(static_cast<double>(trials)) : 0.0;
}

JitterStats jitter_robustness(const PulsePattern& pattern, const TransmonSpec& spec,
                              const QubitGate& target, double delta_theta, double sigma,
                              int trials, std::uint64_t rng_seed) {
  if (trials < 1) throw std::invalid_argument("jitter_robustness: trials must be >= 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("jitter_robustness: sigma must be >= 0");

  JitterStats stats;
  stats.trials = trials;
  stats.noiseless = fitness(pattern, spec, target, delta_theta);
  if (sigma == 0.0) {
    stats.mean = stats.noiseless;
    return stats;
  }

  std::vector<double> samples(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    auto events = pattern_to_events(pattern, sigma, derive_seed(rng_seed, static_cast<std::uint64_t>(t)));
    // A late final pulse stretches the window; the frame conversion keeps the
    // target comparable.
    const double duration =
        events.empty() ? pattern.duration() : std::max(pattern.duration(), events.back().time());
    const UnitaryMatrix u = propagate_sequence(spec, events, delta_theta, duration);
    samples[static_cast<std::size_t>(t)] = gate_report(spec, u, duration, target).infidelity();
  }
  double sum = 0.0;
  for (double s : samples) sum += s;
  stats.mean = sum / trials;
  double ss = 0.0;
  for (double s : samples) ss += (s - stats.mean) * (s - stats.mean);
  stats.stddev = trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;
  return stats;
}

}  // namespace sfq
