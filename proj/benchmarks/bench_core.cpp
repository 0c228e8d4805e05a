#include <benchmark/benchmark.h>

#include "sfq/constants.hpp"
#include "sfq/fidelity.hpp"
#include "sfq/genetic.hpp"
#include "sfq/pattern.hpp"
#include "sfq/pgu.hpp"
#include "sfq/transmon.hpp"

namespace {

sfq::TransmonSpec qubit(int levels) { return sfq::TransmonSpec::from_hz(levels, 5e9, 200e6); }

// 20 ns resonant train, one tick per qubit period.
void BM_PropagateResonant(benchmark::State& state) {
  const auto spec = qubit(static_cast<int>(state.range(0)));
  const double dt = sfq::tip_angle(spec);
  const auto grid = sfq::ClockGrid::for_qubit(spec, 1.0, 100);
  const auto events = sfq::pattern_to_events(sfq::resonant_pattern(spec, grid, sfq::kPi / 2, dt));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfq::propagate_sequence(spec, events, dt, grid.duration()));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events.size()));
}
BENCHMARK(BM_PropagateResonant)->Arg(2)->Arg(3)->Arg(4)->Arg(6);

// Fitness of a dense pattern on the 8-substep, 800-tick grid used by the search.
void BM_Fitness(benchmark::State& state) {
  const auto spec = qubit(3);
  const double dt = sfq::tip_angle(spec);
  const auto grid = sfq::ClockGrid::for_qubit(spec, 8.0, 800);
  sfq::Bits bits(800, 0);
  for (std::size_t i = 0; i < bits.size(); i += 8) bits[i] = 1;
  const auto pattern = sfq::PulsePattern(grid, bits);
  const auto target = sfq::y_rotation(sfq::kPi / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfq::fitness(pattern, spec, target, dt));
  }
}
BENCHMARK(BM_Fitness);

void BM_GASearch(benchmark::State& state) {
  const auto spec = qubit(3);
  const sfq::GateProblem problem{spec, sfq::y_rotation(sfq::kPi / 2), sfq::tip_angle(spec)};
  const auto grid = sfq::ClockGrid::for_qubit(spec, 8.0, 200);
  sfq::GAConfig cfg;
  cfg.population_size = 40;
  cfg.generations = 20;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfq::ga_search(cfg, grid, problem));
  }
}
BENCHMARK(BM_GASearch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_StreamPGU(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sfq::Bits bits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (i * 7) % 3 == 0;
  const std::vector<sfq::S2PRegister> regs{sfq::load_pattern(sfq::S2PRegister(n), bits),
                                           sfq::load_pattern(sfq::S2PRegister(n), bits)};
  const sfq::PGUConfig cfg{n, 2, 40e9, sfq::ReadoutMode::merger_sync};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfq::stream_pgu(cfg, regs));
  }
}
BENCHMARK(BM_StreamPGU)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
