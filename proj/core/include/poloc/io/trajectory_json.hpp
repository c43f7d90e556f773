#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poloc/detection/eliminate.hpp"

namespace poloc::io {

// Trajectory exchange format:
//
//   {"trajectories": [
//     {"id": "T1",
//      "label": "actual",                       optional ground truth
//      "entries": [{"timestamp": 12, "tag": "<40 hex>", "rsu": 3}, ...],
//      "proofs": [{"m": 1, "pk": "<hex>", "signature": "<hex>",
//                  "finalized_at_hop": 3}, ...]}]}
//
// An entry needs "timestamp" and at least one of "tag" (20 bytes hex) and
// "rsu"; an entry with only "rsu" gets the tag derived by rsu_tag().
struct TrajectorySet {
  std::vector<protocol::Trajectory> trajectories;
  std::vector<std::optional<detection::Label>> labels;  // per trajectory
};

protocol::TagBytes rsu_tag(std::uint32_t rsu_id);

// Throws FormatError on malformed input.
TrajectorySet parse_trajectories(std::string_view json_text, const crypto::GroupParams& gp);

std::string trajectories_to_json(const std::vector<protocol::Trajectory>& trajectories,
                                 const crypto::GroupParams& gp,
                                 const std::vector<detection::Label>* labels = nullptr);

}  // namespace poloc::io
