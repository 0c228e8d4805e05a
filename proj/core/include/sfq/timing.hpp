#pragma once

#include <cmath>
#include <cstdint>

namespace sfq {

/// Nearest integer tick to `ticks`; exact half-tick ties go to the earlier tick.
inline std::int64_t nearest_tick(double ticks) {
  return static_cast<std::int64_t>(std::ceil(ticks - 0.5));
}

}  // namespace sfq
