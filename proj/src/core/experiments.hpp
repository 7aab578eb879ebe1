// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#ifndef HGP_CORE_EXPERIMENTS_HPP
#define HGP_CORE_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace hgp {

/// One experiment = one JSON config = one output document.
struct ExperimentResult {
  std::string filename;  // suggested output name, e.g. "threshold.json"
  std::string content;
};

/// Parses and runs a config (commands: run, threshold, search, adaptive,
/// yield, recycle_compare). Unknown or missing keys raise
/// std::invalid_argument; numerical failures raise std::runtime_error.
/// `seed_override` replaces the config's "seed"; `workers` parallelizes
/// sequence search.
ExperimentResult run_experiment(const std::string& config_json,
                                std::optional<std::uint64_t> seed_override = std::nullopt, int workers = 1);

struct VerifyReport {
  int rewrite_mismatches = 0;
  int protocol_mismatches = 0;
  std::string text;
};

/// Cross-checks the graphical rewrite rules and the coefficient-space
/// protocol maps against the dense simulator.
VerifyReport verify(std::uint64_t seed = 1);

}  // namespace hgp

#endif
