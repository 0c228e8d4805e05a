#pragma once

#include <cstdint>

namespace sfq {

/// Junction costs of the MUX/DEMUX building blocks.
struct JunctionCosts {
  std::int64_t per_merger = 5;
  std::int64_t per_splitter = 3;
  std::int64_t per_ndro = 8;
  std::int64_t per_squid_stage = 2;
  std::int64_t mux_overhead_per_channel = 1;
  std::int64_t demux_receiver = 3;
};

inline constexpr JunctionCosts kJunctionCosts{};

enum class MuxVariant { merger_tree, squid_stack };

struct MuxSpec {
  std::int64_t channels = 1;
  MuxVariant variant = MuxVariant::merger_tree;
};

struct DemuxSpec {
  std::int64_t channels = 1;
};

/// merger_tree: 5n + n, squid_stack: 2n + n.
std::int64_t mux_junctions(const MuxSpec& spec, const JunctionCosts& costs = kJunctionCosts);

/// Splitter tree with one NDRO per branch plus receiver junctions: 3n + 8n + 3.
std::int64_t demux_junctions(const DemuxSpec& spec, const JunctionCosts& costs = kJunctionCosts);

/// Extra junctions of a P2S output register over merger + SYNC: 3N - 4.
std::int64_t p2s_junction_overhead(std::int64_t register_bits);

}  // namespace sfq
