#include "sfq/pgu.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sfq {

void PGUConfig::validate() const {
  if (register_bits < 1) throw std::invalid_argument("PGUConfig: register_bits must be >= 1");
  if (register_count < 1) throw std::invalid_argument("PGUConfig: register_count must be >= 1");
  if (!(std::isfinite(fast_clock) && fast_clock > 0.0)) {
    throw std::invalid_argument("PGUConfig: fast_clock must be positive");
  }
}

S2PRegister::S2PRegister(int bits) {
  if (bits < 1) throw std::invalid_argument("S2PRegister: size must be >= 1");
  cells_.assign(static_cast<std::size_t>(bits), 0);
}

void S2PRegister::load(std::span<const std::uint8_t> bits) {
  if (bits.size() != cells_.size()) {
    throw std::invalid_argument("S2PRegister: expected " + std::to_string(cells_.size()) +
                                " bits, got " + std::to_string(bits.size()));
  }
  // One load-clock shift per bit: every cell moves one place toward the end.
  for (auto bit : bits) {
    if (bit > 1) throw std::invalid_argument("S2PRegister: bits must be 0 or 1");
    std::shift_right(cells_.begin(), cells_.end(), 1);
    cells_.front() = bit;
  }
  loaded_ = true;
}

Bits S2PRegister::read() const {
  if (!loaded_) throw std::logic_error("S2PRegister: read before load");
  return Bits(cells_.rbegin(), cells_.rend());
}

S2PRegister load_pattern(S2PRegister reg, std::span<const std::uint8_t> bits) {
  reg.load(bits);
  return reg;
}

PulseTrain merge_trains(std::span<const PulseTrain> trains) {
  PulseTrain out;
  for (const auto& t : trains) out.ticks.insert(out.ticks.end(), t.ticks.begin(), t.ticks.end());
  std::sort(out.ticks.begin(), out.ticks.end());
  const auto clash = std::adjacent_find(out.ticks.begin(), out.ticks.end());
  if (clash != out.ticks.end()) {
    throw StitchingError("merger collision at fast-clock tick " + std::to_string(*clash));
  }
  return out;
}

std::vector<StreamSample> stream_pgu(const PGUConfig& config,
                                     std::span<const S2PRegister> registers) {
  config.validate();
  if (registers.size() != static_cast<std::size_t>(config.register_count)) {
    throw std::invalid_argument("stream_pgu: register count differs from config");
  }
  const std::int64_t n = config.register_bits;
  std::vector<PulseTrain> trains;
  trains.reserve(registers.size());
  for (std::size_t r = 0; r < registers.size(); ++r) {
    if (registers[r].size() != n) {
      throw std::invalid_argument("stream_pgu: register size differs from config");
    }
    if (!registers[r].loaded()) {
      throw std::logic_error("stream_pgu: register " + std::to_string(r) + " is not loaded");
    }
    // SYNC releases register r on readout-clock edge r.
    const std::int64_t release = static_cast<std::int64_t>(r) * n;
    const Bits bits = registers[r].read();
    PulseTrain train;
    for (std::int64_t i = 0; i < n; ++i) {
      if (bits[static_cast<std::size_t>(i)]) train.ticks.push_back(release + i);
    }
    trains.push_back(std::move(train));
  }
  // The P2S variant shifts the same words out serially; only its junction
  // cost differs, so both modes share the merged schedule.
  const PulseTrain merged = merge_trains(trains);

  std::vector<StreamSample> stream(static_cast<std::size_t>(n * config.register_count));
  for (std::size_t t = 0; t < stream.size(); ++t) stream[t].tick = static_cast<std::int64_t>(t);
  for (auto tick : merged.ticks) stream[static_cast<std::size_t>(tick)].bit = 1;
  return stream;
}

}  // namespace sfq
