#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "poloc/protocol/messages.hpp"

namespace poloc::sim {

using protocol::RsuId;

enum class Topology { line, grid, random_geometric };

std::string_view to_string(Topology t);
Topology parse_topology(std::string_view s);  // throws InvalidArgument

// RSU ids are 1..n and double as share indices in a single RSU group.
struct RoadNetwork {
  std::vector<std::vector<RsuId>> adjacency;  // adjacency[id - 1], ascending
  std::vector<std::uint32_t> group;           // group[id - 1]

  std::size_t size() const { return adjacency.size(); }
  const std::vector<RsuId>& neighbors(RsuId id) const { return adjacency.at(id - 1); }
  bool connected() const;
};

// Line: a path. Grid: the smallest near-square lattice holding n nodes,
// filled row by row, 4-neighbour links. Random geometric: points in the unit
// square linked within radius sqrt(2 ln n / n), redrawn until connected.
// Throws InvalidArgument for n < 2 and std::runtime_error if no connected
// random draw is found within the retry bound.
RoadNetwork generate_network(std::size_t n_rsus, Topology topology, std::mt19937_64& rng);

inline constexpr int kNetworkRetries = 100;

}  // namespace poloc::sim
