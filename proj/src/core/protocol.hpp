// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#ifndef HGP_CORE_PROTOCOL_HPP
#define HGP_CORE_PROTOCOL_HPP

#include <utility>
#include <vector>

#include "core/hbasis.hpp"

// Fast coefficient-space implementation of the purification sub-protocols.
// One sub-protocol consumes two identical copies of a state, targets one
// color, and emits the kept branch plus (optionally) every recycle branch.
//
// Precondition for all maps: the coloring is valid and every edge of the
// target contains exactly one vertex of each color (the 3-colorable
// 3-regular family, and its k-color analogue for the keep branch).
namespace hgp {

struct SubprotocolResult {
  HBState kept;          // normalized post-selected state of the keep branch
  double p_pattern = 0;  // probability that every rest-vertex measured P
  double p_reduce_each = 0;  // per-vertex reduction success, p_pattern^(1/|R|)
  double p_keep = 0;     // P(sigma_x all "+1" | all-P pattern)
  double p_minus = 0;    // 1 - p_keep; the adaptive rule's statistic
};

struct RecycleBranch {
  EdgeMask pperp_vertices = 0;  // rest-vertices that measured P_perp
  EdgeMask minus_vertices = 0;  // measured-color vertices with sigma_z "-1"
  int z_outcome = +1;           // +1 if minus_vertices is empty, else -1
  std::vector<int> correction_vertices;  // local Z corrections applied
  HBState state;                // normalized post-correction state
  double probability = 0;
};

SubprotocolResult subprotocol_keep(const HBState& sigma, int measured_color, const Coloring& coloring);

std::pair<SubprotocolResult, std::vector<RecycleBranch>> subprotocol_recycle(const HBState& sigma,
                                                                             int measured_color,
                                                                             const Coloring& coloring);

/// The "-1" statistic of the would-be sub-protocol, without committing the state.
double minus_one_probability(const HBState& sigma, int measured_color, const Coloring& coloring);

}  // namespace hgp

#endif
