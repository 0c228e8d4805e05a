#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sfq/fidelity.hpp"
#include "sfq/pattern.hpp"

namespace sfq {

/// Genetic search over clock-gridded bit patterns.
struct GAConfig {
  int population_size = 100;
  int generations = 500;
  double crossover_rate = 0.7;
  /// Per-bit flip probability; unset means 1 / n_ticks.
  std::optional<double> mutation_rate_per_bit;
  int elite_count = 2;
  int tournament_size = 3;
  std::uint64_t rng_seed = 1;
  /// Worker threads for fitness evaluation. Results do not depend on it.
  int threads = 1;

  double mutation_rate(int n_ticks) const {
    return mutation_rate_per_bit.value_or(1.0 / n_ticks);
  }
  void validate() const;
};

struct GenerationStats {
  int generation = 0;
  double best = 0.0;  // infidelity
  double mean = 0.0;
};

struct OptimizationResult {
  PulsePattern best_pattern;
  FidelityReport best_report;
  std::vector<GenerationStats> history;  // generation 0 is the initial population
  std::size_t evaluations = 0;           // fitness computations, cache hits excluded
};

/// The problem being optimized: gate target on one transmon.
struct GateProblem {
  TransmonSpec spec;
  QubitGate target = QubitGate::Identity();
  double delta_theta = 0.0;
};

/// Tournament selection, single-point crossover, per-bit mutation and
/// elitism. Individuals are ranked by (infidelity, bit string), so the result
/// is bit-identical for a fixed seed regardless of `threads`. Seeds fill the
/// first population slots; the rest are random patterns with the same pulse
/// density as the densest seed (or 1 / substeps when unseeded).
OptimizationResult ga_search(const GAConfig& config, const ClockGrid& grid,
                             const GateProblem& problem,
                             const std::vector<PulsePattern>& seed_patterns = {});

}  // namespace sfq
