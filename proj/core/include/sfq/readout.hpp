#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sfq {

/// Delay demodulator: a race arbiter clocked twice per probe pulse sorts the
/// probe into the even or odd half of the clock period.
struct DemodConfig {
  double clock_period = 0.0;     // s
  double delay_threshold = 0.0;  // s

  /// Threshold at half the clock period.
  static DemodConfig with_period(double clock_period);
  void validate() const;
};

enum class TimeBin { even_bin, odd_bin };

/// Delays below the threshold land in the even bin; the threshold itself and
/// anything later land in the odd bin. Throws for delays outside
/// [0, clock_period).
TimeBin jpm_delay_demod(const DemodConfig& config, double pulse_delay);

/// Manchester mapping: even bin is measurement 0 (no flux), odd bin is 1.
inline int measurement_bit(TimeBin bin) { return bin == TimeBin::odd_bin ? 1 : 0; }

/// Toggle flip-flop: emits on every second input pulse (the 2nd, 4th, ...).
std::vector<double> tff_divide(std::span<const double> pulse_times);

struct ChannelResult {
  int channel = 0;
  int bit = 0;

  friend bool operator==(const ChannelResult&, const ChannelResult&) = default;
};

/// Time-slot MUX frame: channel i owns slot i, which is two Manchester bins
/// (2i, 2i + 1). A pulse in the even bin carries 0, in the odd bin carries 1,
/// and an empty slot means the channel did not report.
std::vector<std::uint8_t> timeslot_mux(std::span<const ChannelResult> results, int frame_length);

/// Inverse of timeslot_mux; results come back ordered by channel.
std::vector<ChannelResult> timeslot_demux(std::span<const std::uint8_t> frame);

}  // namespace sfq
