#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "sfq/pattern.hpp"

namespace sfq {

/// Two pulses reached the merger in the same fast-clock tick.
class StitchingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReadoutMode { merger_sync, p2s };

struct PGUConfig {
  int register_bits = 1;   // N
  int register_count = 1;  // M
  double fast_clock = 40e9;  // Hz
  ReadoutMode readout_mode = ReadoutMode::merger_sync;

  /// fast_clock / N, produced by the clock controller.
  double readout_clock() const { return fast_clock / register_bits; }
  void validate() const;
};

/// N-bit serial-in, parallel-out register built from NDRO cells.
///
/// Loading shifts bits in serially, so the first loaded bit ends up in the
/// last cell; readout starts from the last cell and reproduces load order.
/// Reads are nondestructive.
class S2PRegister {
 public:
  explicit S2PRegister(int bits);

  void load(std::span<const std::uint8_t> bits);
  bool loaded() const { return loaded_; }
  int size() const { return static_cast<int>(cells_.size()); }

  /// Wave-pipeline readout. Throws std::logic_error before the first load.
  Bits read() const;

 private:
  Bits cells_;
  bool loaded_ = false;
};

/// Returns `reg` after loading `bits`; length must equal the register size.
S2PRegister load_pattern(S2PRegister reg, std::span<const std::uint8_t> bits);

struct StreamSample {
  std::int64_t tick = 0;
  std::uint8_t bit = 0;
};

struct PulseTrain {
  std::vector<std::int64_t> ticks;  // sorted
};

/// Asynchronous OR of several pulse trains, re-synchronized to the fast
/// clock. Throws StitchingError when two pulses share a tick.
PulseTrain merge_trains(std::span<const PulseTrain> trains);

/// Cycle-level PGU model. Register r is released by the r-th readout clock
/// edge through its SYNC gate and streams its N cells on fast ticks
/// [r N, (r + 1) N). The merged output has one sample per tick.
std::vector<StreamSample> stream_pgu(const PGUConfig& config,
                                     std::span<const S2PRegister> registers);

}  // namespace sfq
