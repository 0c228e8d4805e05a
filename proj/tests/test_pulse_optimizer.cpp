#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "sfq/genetic.hpp"
#include "sfq/pattern.hpp"
#include "sfq/scan.hpp"

using namespace sfq;

namespace {

const QubitGate kHalfPi = y_rotation(kPi / 2);

GAConfig small_ga(std::uint64_t seed = 3) {
  GAConfig c;
  c.population_size = 30;
  c.generations = 40;
  c.rng_seed = seed;
  return c;
}

}  // namespace

TEST_CASE("clock grid") {
  const auto spec = fixture::transmon();
  const auto grid = ClockGrid::for_qubit(spec, 8, 800);
  CHECK(grid.clock_frequency == doctest::Approx(40e9));
  CHECK(grid.duration() == doctest::Approx(20e-9));
  CHECK_THROWS_AS(ClockGrid::for_qubit(spec, 0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(ClockGrid::for_qubit(spec, 8, 0), std::invalid_argument);
  CHECK_THROWS_AS(ClockGrid::for_qubit(spec, 8, 100001), std::invalid_argument);
  CHECK_THROWS_AS(PulsePattern(grid, Bits(799, 0)), std::invalid_argument);
  CHECK_THROWS_AS(PulsePattern::from_string(ClockGrid::for_qubit(spec, 8, 3), "012"),
                  std::invalid_argument);
  const auto p = PulsePattern::from_string(ClockGrid::for_qubit(spec, 8, 4), "1011");
  CHECK(p.pulse_count() == 3);
  CHECK(p.to_string() == "1011");
}

TEST_CASE("resonant pattern") {
  const auto spec = fixture::transmon();
  SUBCASE("one pulse per period") {
    const auto grid = ClockGrid::for_qubit(spec, 1, 50);
    const auto p = resonant_pattern(spec, grid, kPi / 2, kPi / 100);
    CHECK(p.pulse_count() == 50);
    CHECK(p.duration() == doctest::Approx(10e-9));
  }
  SUBCASE("natural tip angle needs about 100 pulses") {
    const auto grid = ClockGrid::for_qubit(spec, 1, 100);
    const auto p = resonant_pattern(spec, grid, kPi / 2, tip_angle(spec));
    CHECK(p.pulse_count() == 98);
    CHECK(98 * spec.period() == doctest::Approx(19.6e-9));
  }
  SUBCASE("zero target") {
    const auto grid = ClockGrid::for_qubit(spec, 8, 16);
    CHECK(resonant_pattern(spec, grid, 0.0, 0.01).pulse_count() == 0);
  }
  SUBCASE("capacity") {
    const auto grid = ClockGrid::for_qubit(spec, 8, 8 * 49);
    CHECK_THROWS_AS(resonant_pattern(spec, grid, kPi / 2, kPi / 100), CapacityError);
  }
  SUBCASE("half-tick ties go to the earlier tick") {
    const auto grid = ClockGrid::for_qubit(spec, 2.5, 10);
    const auto p = resonant_pattern(spec, grid, 4 * 0.1, 0.1);
    CHECK(p.to_string() == "1010010100");
  }
  SUBCASE("eight substeps") {
    const auto grid = ClockGrid::for_qubit(spec, 8, 24);
    CHECK(resonant_pattern(spec, grid, 0.3, 0.1).to_string() == "100000001000000010000000");
  }
}

TEST_CASE("pattern to events") {
  const auto spec = fixture::transmon();
  const auto grid = ClockGrid::for_qubit(spec, 8, 2000);
  std::mt19937_64 rng(1);
  const auto p = fixture::random_pattern(grid, 1000, rng);

  const auto exact = pattern_to_events(p);
  std::size_t i = 0;
  for (std::size_t k = 0; k < p.bits.size(); ++k) {
    if (!p.bits[k]) continue;
    CHECK(exact[i].nominal_time == static_cast<double>(k) * grid.tick());
    CHECK(exact[i].jitter_offset == 0.0);
    ++i;
  }
  CHECK(i == exact.size());

  const double sigma = 1e-12;
  const auto a = pattern_to_events(p, sigma, 77);
  const auto b = pattern_to_events(p, sigma, 77);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].nominal_time == b[k].nominal_time);
    CHECK(a[k].jitter_offset == b[k].jitter_offset);
  }
  for (std::size_t k = 1; k < a.size(); ++k) CHECK(a[k - 1].time() <= a[k].time());

  // Empirical spread over 1e4 offsets.
  std::vector<double> offsets;
  for (std::uint64_t seed = 0; offsets.size() < 10000; ++seed) {
    for (const auto& e : pattern_to_events(p, sigma, seed)) offsets.push_back(e.jitter_offset);
  }
  offsets.resize(10000);
  const double mean = std::accumulate(offsets.begin(), offsets.end(), 0.0) / offsets.size();
  double ss = 0.0;
  for (double o : offsets) ss += (o - mean) * (o - mean);
  const double sd = std::sqrt(ss / (offsets.size() - 1));
  CHECK(std::abs(sd - sigma) < 0.03 * sigma);
  CHECK(std::abs(mean) < 4.0 * sigma / 100.0);

  CHECK_THROWS_AS(pattern_to_events(p, -1.0), std::invalid_argument);
}

TEST_CASE("fitness") {
  SUBCASE("two-level resonant pattern") {
    const auto spec = TransmonSpec::from_hz(2, 5e9, 200e6);
    const auto grid = ClockGrid::for_qubit(spec, 8, 800);
    const auto p = resonant_pattern(spec, grid, kPi / 2, kPi / 100);
    CHECK(fitness(p, spec, kHalfPi, kPi / 100) <= 1e-6);
  }
  SUBCASE("empty pattern") {
    const auto spec = fixture::transmon();
    const auto grid = ClockGrid::for_qubit(spec, 8, 64);
    CHECK(fitness(PulsePattern(grid), spec, kHalfPi, 0.05) == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("20 ns resonant gate at d = 3") {
    const auto spec = fixture::transmon();
    const auto grid = ClockGrid::for_qubit(spec, 8, 800);
    const auto p = resonant_pattern(spec, grid, kPi / 2, kPi / 200);
    const double f = fitness(p, spec, kHalfPi, kPi / 200);
    CHECK(f > 3e-4);
    CHECK(f < 3e-3);
  }
}

TEST_CASE("resonant infidelity falls as n^-2") {
  const auto spec = fixture::transmon(3);
  std::vector<double> xs, ys;
  for (int n = 25; n <= 400; n = static_cast<int>(n * 1.25)) {
    const auto grid = ClockGrid::for_qubit(spec, 1, n);
    const double dt = (kPi / 2) / n;
    const auto p = resonant_pattern(spec, grid, kPi / 2, dt);
    REQUIRE(p.pulse_count() == static_cast<std::size_t>(n));
    xs.push_back(std::log(n));
    ys.push_back(std::log(fitness(p, spec, kHalfPi, dt)));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  CHECK(slope > -2.3);
  CHECK(slope < -1.7);
}

TEST_CASE("ga configuration") {
  GAConfig c;
  c.population_size = 4;
  c.elite_count = 5;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = GAConfig{};
  c.crossover_rate = 1.5;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = GAConfig{};
  c.mutation_rate_per_bit = -0.1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = GAConfig{};
  CHECK(c.mutation_rate(200) == doctest::Approx(1.0 / 200));
}

TEST_CASE("ga search") {
  const auto spec = fixture::transmon();
  const auto grid = ClockGrid::for_qubit(spec, 8, 200);
  const GateProblem problem{spec, kHalfPi, kPi / 50};
  const auto resonant = resonant_pattern(spec, grid, kPi / 2, kPi / 50);
  const double resonant_fitness = fitness(resonant, spec, kHalfPi, kPi / 50);

  SUBCASE("no generations returns the seed") {
    auto c = small_ga();
    c.generations = 0;
    const auto r = ga_search(c, grid, problem, {resonant});
    CHECK(r.best_report.infidelity() <= resonant_fitness);
    CHECK(r.history.size() == 1);
  }
  SUBCASE("seeded search never loses to the seed and is elitist") {
    const auto r = ga_search(small_ga(), grid, problem, {resonant});
    CHECK(r.best_report.infidelity() <= resonant_fitness);
    CHECK(r.history.size() == 41);
    for (std::size_t g = 1; g < r.history.size(); ++g) {
      CHECK(r.history[g].best <= r.history[g - 1].best);
    }
    CHECK(r.best_report.infidelity() == r.history.back().best);
    CHECK(r.evaluations > 0);
    CHECK(r.evaluations <= 30u * 41u);
  }
  SUBCASE("bit-identical across seeds and thread counts") {
    auto one = small_ga(9);
    auto four = small_ga(9);
    four.threads = 4;
    const auto a = ga_search(one, grid, problem, {resonant});
    const auto b = ga_search(four, grid, problem, {resonant});
    CHECK(a.best_pattern.bits == b.best_pattern.bits);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t g = 0; g < a.history.size(); ++g) {
      CHECK(a.history[g].best == b.history[g].best);
      CHECK(a.history[g].mean == b.history[g].mean);
    }
    CHECK(a.evaluations == b.evaluations);

    const auto c = ga_search(small_ga(10), grid, problem, {resonant});
    CHECK(c.history.back().mean != a.history.back().mean);
  }
  SUBCASE("frozen population") {
    auto c = small_ga();
    c.mutation_rate_per_bit = 0.0;
    c.crossover_rate = 0.0;
    c.elite_count = c.population_size;
    const auto r = ga_search(c, grid, problem, {resonant});
    for (const auto& h : r.history) {
      CHECK(h.best == r.history.front().best);
      CHECK(h.mean == doctest::Approx(r.history.front().mean).epsilon(1e-12));
    }
  }
  SUBCASE("unseeded search") {
    const auto r = ga_search(small_ga(), grid, problem);
    CHECK(r.best_report.infidelity() < 1.0 / 3.0);
  }
  SUBCASE("bad seeds") {
    const auto other = ClockGrid::for_qubit(spec, 8, 100);
    CHECK_THROWS_AS(ga_search(small_ga(), grid, problem, {PulsePattern(other)}),
                    std::invalid_argument);
  }
}

TEST_CASE("register scan") {
  const auto spec = fixture::transmon();
  auto ga = small_ga();
  ga.generations = 15;
  const auto rows = scan_register_size(spec, kHalfPi, {kPi / 50}, {8}, {240, 80, 160}, ga);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].register_bits == 80);
  CHECK(rows[2].register_bits == 240);
  CHECK(rows[1].duration_periods == doctest::Approx(20.0));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].infidelity <= rows[i - 1].infidelity);
  for (const auto& r : rows) CHECK(r.tip_angle_rad == kPi / 50);

  // Single point is one ga_search.
  const auto one = scan_register_size(spec, kHalfPi, {kPi / 50}, {8}, {200}, ga);
  const auto grid = ClockGrid::for_qubit(spec, 8, 200);
  const auto direct = ga_search(ga, grid, {spec, kHalfPi, kPi / 50},
                                {resonant_pattern(spec, grid, kPi / 2, kPi / 50)});
  CHECK(one[0].infidelity == direct.best_report.infidelity());

  CHECK_THROWS_AS(scan_register_size(spec, kHalfPi, {}, {8}, {200}, ga), std::invalid_argument);
}

TEST_CASE("jitter robustness") {
  const auto spec = fixture::transmon();
  const auto grid = ClockGrid::for_qubit(spec, 8, 800);
  const double dt = kPi / 200;
  const auto p = resonant_pattern(spec, grid, kPi / 2, dt);

  const auto quiet = jitter_robustness(p, spec, kHalfPi, dt, 0.0, 10, 1);
  CHECK(quiet.mean == quiet.noiseless);
  CHECK(quiet.stddev == 0.0);

  const auto one_ps = jitter_robustness(p, spec, kHalfPi, dt, 1e-12, 200, 4);
  CHECK(one_ps.mean >= one_ps.noiseless);
  CHECK(one_ps.mean - one_ps.noiseless < 1e-2);

  const auto again = jitter_robustness(p, spec, kHalfPi, dt, 1e-12, 200, 4);
  CHECK(again.mean == one_ps.mean);

  double previous_mean = 0.0, previous_se = 0.0;
  for (double sigma : {0.0, 0.5e-12, 1e-12, 2e-12}) {
    const auto s = jitter_robustness(p, spec, kHalfPi, dt, sigma, 200, 21);
    CHECK(s.mean >= previous_mean - 2.0 * (s.standard_error() + previous_se));
    previous_mean = s.mean;
    previous_se = s.standard_error();
  }
  CHECK_THROWS_AS(jitter_robustness(p, spec, kHalfPi, dt, 1e-12, 0, 1), std::invalid_argument);
}
