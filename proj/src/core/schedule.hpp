// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#ifndef HGP_CORE_SCHEDULE_HPP
#define HGP_CORE_SCHEDULE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/protocol.hpp"

namespace hgp {

/// Ordered list of colors to purify, e.g. "ABC-CBA-ABC" (dashes optional).
struct Sequence {
  std::vector<int> steps;

  static Sequence parse(const std::string& text);
  std::string to_text() const;  // groups of three, dash-separated
  bool operator==(const Sequence&) const = default;
};

/// Decidable purifiability: what "drives the fidelity to 1" means in runs.
struct ConvergenceConfig {
  double fidelity_target = 1.0 - 1e-6;
  int max_repetitions = 500;     // full sequence repetitions
  double stagnation_eps = 1e-9;  // |dF| below this with F < stagnation_fidelity fails
  double stagnation_fidelity = 0.99;
  int decreasing_limit = 10;     // consecutive decreasing repetitions
};

struct TrajectoryPoint {
  int repetition = 0;  // 0-based sequence repetition
  int step = 0;        // 0-based position within the repetition
  int color = 0;
  double fidelity = 0;  // after the sub-protocol
  double p_keep = 0;
  double p_pattern = 0;
  std::int64_t pool = 0;  // copies left after the step (monte-carlo mode only)
};

enum class RunStatus { completed, converged, stagnated, decreasing, exhausted, failed };

struct RunResult {
  std::vector<TrajectoryPoint> trajectory;
  HBState final_state;
  RunStatus status = RunStatus::completed;
  bool purified = false;
  std::string error;
};

/// Deterministic trajectory of `repetitions` passes of the sequence (Protocol
/// 1 keep branch only, exact probabilities).
RunResult run_sequence(const HBState& sigma0, const Coloring& coloring, const Sequence& seq, int repetitions);

/// Smallest noise parameter p (to `resolution`, by bisection) for which the
/// sequence purifies E(|H_0><H_0|, p) under the convergence rules.
double find_threshold(NoiseKind kind, const EdgeSet& target, const Coloring& coloring, const Sequence& seq,
                      const ConvergenceConfig& conv = {}, double resolution = 1e-4);

/// Two-sequence adaptive scheme: run s1, watch each party's last three "-1"
/// probabilities x (x3 newest), switch permanently to s2 once a.x > b.
struct AdaptiveConfig {
  Sequence s1, s2;
  std::array<double, 3> a{};
  double b = 0;
};

struct SwitchEvent {
  bool switched = false;
  int repetition = -1;
  int step = -1;
  int color = -1;
  double ax = 0;
};

struct AdaptiveRunResult {
  std::vector<TrajectoryPoint> trajectory;
  SwitchEvent switch_event;
  HBState final_state;
  RunStatus status = RunStatus::completed;
  bool purified = false;
  std::string error;
};

struct MonteCarloConfig {
  std::uint64_t seed = 0;
  std::int64_t pool = 0;  // initial number of state copies
};

/// Runs the adaptive scheme until convergence/failure. Exact mode pushes
/// exact probabilities; monte-carlo mode estimates them from binomial
/// outcome frequencies over a finite pool of copies.
AdaptiveRunResult adaptive_run(const HBState& sigma0, const Coloring& coloring, const AdaptiveConfig& cfg,
                               const ConvergenceConfig& conv = {},
                               const std::optional<MonteCarloConfig>& mc = std::nullopt);

double find_threshold_adaptive(NoiseKind kind, const EdgeSet& target, const Coloring& coloring,
                               const AdaptiveConfig& cfg, const ConvergenceConfig& conv = {},
                               double resolution = 1e-4);

enum class SearchSpace { triple_perms, full };

struct SearchEntry {
  Sequence seq;
  double p_min = 1.0;
};

/// Exhaustive sequence search, every candidate scored by find_threshold.
/// Ranked ascending by p_min, ties broken by lexicographic sequence order.
std::vector<SearchEntry> search_sequences(NoiseKind kind, const EdgeSet& target, const Coloring& coloring,
                                          int length, SearchSpace space, const ConvergenceConfig& conv = {},
                                          double resolution = 1e-4, int workers = 1);

struct RoundLedger {
  int round = 0;
  double inputs = 0;  // states consumed this round (2 * pairs)
  double pairs = 0;
  double kept = 0;
  double discarded = 0;
  double recycled = 0;
  double p_pattern = 0;  // main-line cohort statistics
  double p_keep = 0;
};

struct YieldLedger {
  std::vector<RoundLedger> rounds;
  double inputs_per_output = 0;
  double final_fidelity = 0;  // main-line cohort after all rounds
  double outputs = 0;         // expected outputs per initial input
};

/// Expected-value yield accounting over `rounds` sub-protocols with colors
/// taken cyclically from `seq`. With recycle=true, recycle branches re-enter
/// as cohorts that restart the schedule (pruned below a count threshold).
YieldLedger yield_estimate(const HBState& sigma0, const Coloring& coloring, const Sequence& seq, int rounds,
                           bool recycle);

struct RecycleComparePoint {
  double f0 = 0;  // input fidelity
  double f3 = 0;  // main-line fidelity after `rounds`
  double outputs_plain = 0;
  double outputs_extra = 0;  // recycle-derived outputs with fidelity >= f3
  double extra_fraction = 0;
};

/// Protocol 1 vs Protocol 2 output counting on white-noise inputs.
std::vector<RecycleComparePoint> recycle_compare(const EdgeSet& target, const Coloring& coloring,
                                                 const std::vector<double>& f0_grid, int rounds = 3);

}  // namespace hgp

#endif
