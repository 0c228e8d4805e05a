#pragma once

#include <cstdint>
#include <vector>

namespace sfq {

struct DispersiveParams {
  double coupling_g = 0.0;      // rad/s
  double detuning_delta = 0.0;  // rad/s
};

struct DispersiveShift {
  double chi = 0.0;          // rad/s, g^2 / Delta
  double ringup_time = 0.0;  // s, pi / chi (negative when chi is)
};

/// Throws std::domain_error at zero detuning.
DispersiveShift dispersive_shift(const DispersiveParams& params);

/// Photon-counter click statistics for the bright and dark cavity pointers.
///
/// Photon number is Poissonian, each photon is detected independently with
/// efficiency eta, and a dark click happens with probability p_d regardless:
///   P(click) = 1 - (1 - p_d) exp(-eta n).
struct JPMClickModel {
  double bright_mean_photons = 0.0;
  double dark_residual_photons = 0.0;
  double per_photon_efficiency = 1.0;
  double dark_click_probability = 0.0;

  void validate() const;
};

enum class Pointer { bright, dark };

/// The 92% raw single-shot operating point: p_d = 0.04, eta n = ln 24, n_res = 0.
JPMClickModel calibrated_jpm_model();

double click_probability(const JPMClickModel& model, Pointer pointer);

/// 1 - P(click | dark) - P(no click | bright), clamped at 0.
double single_shot_fidelity(const JPMClickModel& model);

struct ShotCounts {
  std::int64_t shots = 0;
  std::int64_t clicks = 0;
  std::int64_t excited = 0;           // shots projected onto |1>
  std::int64_t clicks_when_excited = 0;

  double click_rate() const { return shots > 0 ? static_cast<double>(clicks) / shots : 0.0; }
};

/// Expected click rate p1 P(click | bright) + (1 - p1) P(click | dark).
double expected_click_rate(const JPMClickModel& model, double excited_probability);

/// Samples projection then click for each shot; deterministic per seed.
ShotCounts measurement_shot(const JPMClickModel& model, double excited_probability,
                            std::uint64_t rng_seed, std::int64_t shots);

struct RabiPoint {
  double theta_rad = 0.0;
  double click_rate = 0.0;
  std::int64_t shots = 0;
};

/// Click-rate fringes for p1 = sin^2(theta / 2); point i uses its own stream
/// derived from `rng_seed`.
std::vector<RabiPoint> rabi_scan(const JPMClickModel& model, const std::vector<double>& thetas,
                                 std::int64_t shots, std::uint64_t rng_seed);

}  // namespace sfq
