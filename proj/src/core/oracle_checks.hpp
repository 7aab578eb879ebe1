// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#ifndef HGP_CORE_ORACLE_CHECKS_HPP
#define HGP_CORE_ORACLE_CHECKS_HPP

#include <random>
#include <vector>

#include "core/protocol.hpp"

// Cross-checks of the graphical rewrite rules and the coefficient-space
// protocol maps against the dense simulator. Shared by `verify` and the
// acceptance suite.
namespace hgp::checks {

constexpr double kRewriteTol = 1e-10;
constexpr double kProtocolTol = 1e-9;

/// Every nonempty edge mask on n vertices.
std::vector<EdgeMask> all_possible_edges(int n);

/// Normalized Ginibre-random mixed state in the hypergraph basis of `target`.
HBState random_state(const EdgeSet& target, std::mt19937_64& rng);

/// All single-hypergraph rewrite rules vs. the dense simulator; returns the
/// number of mismatches.
int check_rewrites(const EdgeSet& es);

/// Keep branch plus every recycle branch vs. the dense two-copy simulator,
/// including total-probability conservation; returns the number of
/// mismatches.
int check_protocol(const HBState& sigma, int measured_color, const Coloring& coloring);

}  // namespace hgp::checks

#endif
