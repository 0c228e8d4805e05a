#include "sfq/readout.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sfq {

DemodConfig DemodConfig::with_period(double clock_period) {
  DemodConfig config{clock_period, clock_period / 2.0};
  config.validate();
  return config;
}

void DemodConfig::validate() const {
  if (!(std::isfinite(clock_period) && clock_period > 0.0)) {
    throw std::invalid_argument("DemodConfig: clock_period must be positive");
  }
  if (!(delay_threshold > 0.0 && delay_threshold < clock_period)) {
    throw std::invalid_argument("DemodConfig: threshold must lie inside the clock period");
  }
}

TimeBin jpm_delay_demod(const DemodConfig& config, double pulse_delay) {
  config.validate();
  if (!(pulse_delay >= 0.0 && pulse_delay < config.clock_period)) {
    throw std::invalid_argument("jpm_delay_demod: delay outside [0, clock_period)");
  }
  return pulse_delay < config.delay_threshold ? TimeBin::even_bin : TimeBin::odd_bin;
}

std::vector<double> tff_divide(std::span<const double> pulse_times) {
  std::vector<double> out;
  out.reserve(pulse_times.size() / 2);
  bool state = false;
  for (double t : pulse_times) {
    state = !state;
    if (!state) out.push_back(t);
  }
  return out;
}

std::vector<std::uint8_t> timeslot_mux(std::span<const ChannelResult> results, int frame_length) {
  if (frame_length < 1) throw std::invalid_argument("timeslot_mux: frame_length must be >= 1");
  std::vector<std::uint8_t> frame(2 * static_cast<std::size_t>(frame_length), 0);
  std::vector<bool> seen(static_cast<std::size_t>(frame_length), false);
  for (const auto& r : results) {
    if (r.channel < 0 || r.channel >= frame_length) {
      throw std::invalid_argument("timeslot_mux: channel " + std::to_string(r.channel) +
                                  " outside frame");
    }
    if (r.bit != 0 && r.bit != 1) throw std::invalid_argument("timeslot_mux: bit must be 0 or 1");
    const auto slot = static_cast<std::size_t>(r.channel);
    if (seen[slot]) {
      throw std::invalid_argument("timeslot_mux: two results for channel " +
                                  std::to_string(r.channel) + " in one frame");
    }
    seen[slot] = true;
    frame[2 * slot + static_cast<std::size_t>(r.bit)] = 1;
  }
  return frame;
}

std::vector<ChannelResult> timeslot_demux(std::span<const std::uint8_t> frame) {
  if (frame.size() % 2 != 0) throw std::invalid_argument("timeslot_demux: odd frame length");
  std::vector<ChannelResult> results;
  for (std::size_t slot = 0; slot < frame.size() / 2; ++slot) {
    const bool even = frame[2 * slot] != 0;
    const bool odd = frame[2 * slot + 1] != 0;
    if (even && odd) {
      throw std::invalid_argument("timeslot_demux: both bins set in slot " +
                                  std::to_string(slot));
    }
    if (even || odd) results.push_back({static_cast<int>(slot), odd ? 1 : 0});
  }
  return results;
}

}  // namespace sfq
