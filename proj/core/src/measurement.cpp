#include "sfq/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sfq/constants.hpp"
#include "sfq/random.hpp"

namespace sfq {
namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

DispersiveShift dispersive_shift(const DispersiveParams& params) {
  if (!std::isfinite(params.coupling_g) || !std::isfinite(params.detuning_delta)) {
    throw std::invalid_argument("dispersive_shift: parameters must be finite");
  }
  if (params.detuning_delta == 0.0) {
    throw std::domain_error("dispersive_shift: zero detuning is singular");
  }
  DispersiveShift out;
  out.chi = params.coupling_g * params.coupling_g / params.detuning_delta;
  out.ringup_time = kPi / out.chi;
  return out;
}

void JPMClickModel::validate() const {
  if (!(bright_mean_photons >= 0.0) || !(dark_residual_photons >= 0.0)) {
    throw std::invalid_argument("JPMClickModel: photon numbers must be >= 0");
  }
  if (dark_residual_photons > bright_mean_photons) {
    throw std::invalid_argument("JPMClickModel: dark residual exceeds bright occupation");
  }
  if (!in_unit_interval(per_photon_efficiency)) {
    throw std::invalid_argument("JPMClickModel: efficiency must be in [0, 1]");
  }
  if (!in_unit_interval(dark_click_probability)) {
    throw std::invalid_argument("JPMClickModel: dark click probability must be in [0, 1]");
  }
}

JPMClickModel calibrated_jpm_model() {
  JPMClickModel model;
  model.bright_mean_photons = std::log(24.0);
  model.dark_residual_photons = 0.0;
  model.per_photon_efficiency = 1.0;
  model.dark_click_probability = 0.04;
  return model;
}

double click_probability(const JPMClickModel& model, Pointer pointer) {
  model.validate();
  const double photons =
      pointer == Pointer::bright ? model.bright_mean_photons : model.dark_residual_photons;
  const double miss = (1.0 - model.dark_click_probability) *
                      std::exp(-model.per_photon_efficiency * photons);
  return std::clamp(1.0 - miss, 0.0, 1.0);
}

double single_shot_fidelity(const JPMClickModel& model) {
  const double false_click = click_probability(model, Pointer::dark);
  const double missed = 1.0 - click_probability(model, Pointer::bright);
  return std::max(0.0, 1.0 - false_click - missed);
}

double expected_click_rate(const JPMClickModel& model, double excited_probability) {
  if (!in_unit_interval(excited_probability)) {
    throw std::invalid_argument("expected_click_rate: probability must be in [0, 1]");
  }
  return excited_probability * click_probability(model, Pointer::bright) +
         (1.0 - excited_probability) * click_probability(model, Pointer::dark);
}

ShotCounts measurement_shot(const JPMClickModel& model, double excited_probability,
                            std::uint64_t rng_seed, std::int64_t shots) {
  if (!in_unit_interval(excited_probability)) {
    throw std::invalid_argument("measurement_shot: p1 must be in [0, 1]");
  }
  if (shots < 1) throw std::invalid_argument("measurement_shot: shots must be >= 1");
  const double p_bright = click_probability(model, Pointer::bright);
  const double p_dark = click_probability(model, Pointer::dark);

  std::mt19937_64 rng(rng_seed);
  auto uniform = [&rng] { return uniform01(rng); };
  ShotCounts counts;
  counts.shots = shots;
  for (std::int64_t s = 0; s < shots; ++s) {
    const bool excited = uniform() < excited_probability;
    const bool click = uniform() < (excited ? p_bright : p_dark);
    counts.excited += excited;
    counts.clicks += click;
    counts.clicks_when_excited += excited && click;
  }
  return counts;
}

std::vector<RabiPoint> rabi_scan(const JPMClickModel& model, const std::vector<double>& thetas,
                                 std::int64_t shots, std::uint64_t rng_seed) {
  std::vector<RabiPoint> points;
  points.reserve(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double s = std::sin(thetas[i] / 2.0);
    const ShotCounts counts =
        measurement_shot(model, std::clamp(s * s, 0.0, 1.0), derive_seed(rng_seed, i), shots);
    points.push_back({thetas[i], counts.click_rate(), shots});
  }
  return points;
}

}  // namespace sfq
