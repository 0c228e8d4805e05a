#include "sfq/fabric.hpp"

#include <stdexcept>

namespace sfq {

std::int64_t mux_junctions(const MuxSpec& spec, const JunctionCosts& costs) {
  if (spec.channels < 1) throw std::invalid_argument("mux_junctions: channels must be >= 1");
  const std::int64_t overhead = costs.mux_overhead_per_channel * spec.channels;
  switch (spec.variant) {
    case MuxVariant::merger_tree:
      return costs.per_merger * spec.channels + overhead;
    case MuxVariant::squid_stack:
      return costs.per_squid_stage * spec.channels + overhead;
  }
  throw std::invalid_argument("mux_junctions: unknown variant");
}

std::int64_t demux_junctions(const DemuxSpec& spec, const JunctionCosts& costs) {
  if (spec.channels < 1) throw std::invalid_argument("demux_junctions: channels must be >= 1");
  return costs.per_splitter * spec.channels + costs.per_ndro * spec.channels +
         costs.demux_receiver;
}

std::int64_t p2s_junction_overhead(std::int64_t register_bits) {
  if (register_bits < 2) throw std::invalid_argument("p2s_junction_overhead: N must be >= 2");
  return 3 * register_bits - 4;
}

}  // namespace sfq
