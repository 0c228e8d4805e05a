#include "sfq/genetic.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "sfq/random.hpp"

namespace sfq {
namespace {

constexpr std::size_t kCacheLimit = 1u << 18;

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
}

std::string key_of(const Bits& bits) { return std::string(bits.begin(), bits.end()); }

class FitnessCache {
 public:
  FitnessCache(const ClockGrid& grid, const GateProblem& problem, int threads)
      : grid_(grid), problem_(problem), threads_(std::max(1, threads)) {}

  // Scores every individual. Misses are evaluated (possibly in parallel) and
  // then inserted in index order.
  std::vector<double> score(const std::vector<Bits>& population) {
    std::vector<double> scores(population.size(), 0.0);
    std::vector<std::size_t> misses;
    std::unordered_map<std::string, std::size_t> first_miss;
    std::vector<std::size_t> alias(population.size(), SIZE_MAX);
    for (std::size_t i = 0; i < population.size(); ++i) {
      auto key = key_of(population[i]);
      if (auto hit = cache_.find(key); hit != cache_.end()) {
        scores[i] = hit->second;
      } else if (auto dup = first_miss.find(key); dup != first_miss.end()) {
        alias[i] = dup->second;
      } else {
        first_miss.emplace(std::move(key), i);
        misses.push_back(i);
      }
    }

    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t m = begin; m < end; ++m) {
        const std::size_t i = misses[m];
        scores[i] = fitness(PulsePattern(grid_, population[i]), problem_.spec, problem_.target,
                            problem_.delta_theta);
      }
    };
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads_), misses.size());
    if (workers <= 1) {
      work(0, misses.size());
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (misses.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(misses.size(), begin + chunk);
        if (begin < end) pool.emplace_back(work, begin, end);
      }
      for (auto& t : pool) t.join();
    }
    evaluations_ += misses.size();

    if (cache_.size() + misses.size() > kCacheLimit) cache_.clear();
    for (std::size_t i : misses) cache_.emplace(key_of(population[i]), scores[i]);
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (alias[i] != SIZE_MAX) scores[i] = scores[alias[i]];
    }
    return scores;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  ClockGrid grid_;
  const GateProblem& problem_;
  int threads_;
  std::unordered_map<std::string, double> cache_;
  std::size_t evaluations_ = 0;
};

// Indices sorted best-first by (score, bit string).
std::vector<std::size_t> rank(const std::vector<Bits>& population,
                              const std::vector<double>& scores) {
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    if (population[a] != population[b]) return population[a] < population[b];
    return a < b;
  });
  return order;
}

}  // namespace

void GAConfig::validate() const {
  if (population_size < 1) throw std::invalid_argument("GAConfig: population_size must be >= 1");
  if (generations < 0) throw std::invalid_argument("GAConfig: generations must be >= 0");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw std::invalid_argument("GAConfig: crossover_rate must be in [0, 1]");
  }
  if (mutation_rate_per_bit && !(*mutation_rate_per_bit >= 0.0 && *mutation_rate_per_bit <= 1.0)) {
    throw std::invalid_argument("GAConfig: mutation_rate_per_bit must be in [0, 1]");
  }
  if (elite_count < 0 || elite_count > population_size) {
    throw std::invalid_argument("GAConfig: elite_count must be in [0, population_size]");
  }
  if (tournament_size < 1) throw std::invalid_argument("GAConfig: tournament_size must be >= 1");
  if (threads < 1) throw std::invalid_argument("GAConfig: threads must be >= 1");
}

OptimizationResult ga_search(const GAConfig& config, const ClockGrid& grid,
                             const GateProblem& problem,
                             const std::vector<PulsePattern>& seed_patterns) {
  config.validate();
  grid.validate();
  problem.spec.validate();
  const auto n_bits = static_cast<std::size_t>(grid.n_ticks);
  const auto pop_size = static_cast<std::size_t>(config.population_size);
  if (seed_patterns.size() > pop_size) {
    throw std::invalid_argument("ga_search: more seed patterns than population slots");
  }

  std::mt19937_64 rng(config.rng_seed);
  std::vector<Bits> population;
  population.reserve(pop_size);
  double density = 1.0 / grid.substeps_per_period;
  for (const auto& seed : seed_patterns) {
    if (seed.bits.size() != n_bits) {
      throw std::invalid_argument("ga_search: seed pattern length differs from grid");
    }
    population.push_back(seed.bits);
  }
  if (!seed_patterns.empty()) {
    std::size_t densest = 0;
    for (const auto& seed : seed_patterns) densest = std::max(densest, seed.pulse_count());
    density = static_cast<double>(densest) / static_cast<double>(n_bits);
  }
  while (population.size() < pop_size) {
    Bits bits(n_bits, 0);
    for (auto& b : bits) b = uniform01(rng) < density ? 1 : 0;
    population.push_back(std::move(bits));
  }

  FitnessCache cache(grid, problem, config.threads);
  OptimizationResult result;
  const double mutation = config.mutation_rate(grid.n_ticks);

  auto record = [&](int generation, const std::vector<double>& scores,
                    const std::vector<std::size_t>& order) {
    GenerationStats stats;
    stats.generation = generation;
    stats.best = scores[order.front()];
    stats.mean = std::accumulate(scores.begin(), scores.end(), 0.0) /
                 static_cast<double>(scores.size());
    result.history.push_back(stats);
  };

  std::vector<double> scores = cache.score(population);
  std::vector<std::size_t> order = rank(population, scores);
  record(0, scores, order);

  std::vector<std::size_t> rank_of(pop_size);
  auto tournament = [&]() -> const Bits& {
    std::size_t best = uniform_index(rng, pop_size);
    for (int k = 1; k < config.tournament_size; ++k) {
      const std::size_t challenger = uniform_index(rng, pop_size);
      if (rank_of[challenger] < rank_of[best]) best = challenger;
    }
    return population[best];
  };

  for (int generation = 1; generation <= config.generations; ++generation) {
    for (std::size_t r = 0; r < pop_size; ++r) rank_of[order[r]] = r;

    std::vector<Bits> next;
    next.reserve(pop_size);
    for (int e = 0; e < config.elite_count; ++e) {
      next.push_back(population[order[static_cast<std::size_t>(e)]]);
    }
    while (next.size() < pop_size) {
      Bits child_a = tournament();
      Bits child_b = tournament();
      if (n_bits > 1 && uniform01(rng) < config.crossover_rate) {
        const std::size_t cut = 1 + uniform_index(rng, n_bits - 1);
        std::swap_ranges(child_a.begin() + static_cast<std::ptrdiff_t>(cut), child_a.end(),
                         child_b.begin() + static_cast<std::ptrdiff_t>(cut));
      }
      for (Bits* child : {&child_a, &child_b}) {
        if (mutation > 0.0) {
          for (auto& b : *child) {
            if (uniform01(rng) < mutation) b ^= 1;
          }
        }
        if (next.size() < pop_size) next.push_back(std::move(*child));
      }
    }
    population = std::move(next);
    scores = cache.score(population);
    order = rank(population, scores);
    record(generation, scores, order);
  }

  const std::size_t best = order.front();
  result.best_pattern = PulsePattern(grid, population[best]);
  result.best_report =
      evaluate_pattern(result.best_pattern, problem.spec, problem.target, problem.delta_theta);
  result.evaluations = cache.evaluations();
  return result;
}

}  // namespace sfq
