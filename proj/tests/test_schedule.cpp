// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "core/schedule.hpp"

using namespace hgp;

namespace {

const EdgeSet kStar = EdgeSet::parse("3; {1,2,3}");
const Coloring kABC = Coloring::parse("ABC");

HBState white(double p) { return apply_noise(HBState::pure_target(kStar), {NoiseKind::white, p}); }

}  // namespace

TEST_CASE("sequence parse and formatting") {
  CHECK(Sequence::parse("abc-cba") == Sequence::parse("ABCCBA"));
  CHECK(Sequence::parse("ABC-CBA-ABC").to_text() == "ABC-CBA-ABC");
  CHECK(Sequence::parse("ABCC").to_text() == "ABC-C");
  CHECK(Sequence::parse("ABC").steps == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(Sequence::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Sequence::parse("A1C"), std::invalid_argument);
  // A sequence may name colors the coloring lacks; runs reject it.
  CHECK_THROWS_AS(run_sequence(white(0.7), kABC, Sequence::parse("ABD"), 1), std::invalid_argument);
}

TEST_CASE("run_sequence: pure target stays pure, noisy inputs split by p") {
  const RunResult pure = run_sequence(HBState::pure_target(kStar), kABC, Sequence::parse("ABC"), 5);
  CHECK(pure.purified);
  for (const TrajectoryPoint& pt : pure.trajectory) {
    CHECK(pt.fidelity == doctest::Approx(1.0));
    CHECK(pt.p_keep == doctest::Approx(1.0));
  }

  const RunResult good = run_sequence(white(0.7), kABC, Sequence::parse("ABC-CAB-BCA"), 100);
  CHECK(good.purified);
  CHECK(fidelity(good.final_state) >= 1.0 - 1e-6);

  const RunResult bad = run_sequence(white(0.5), kABC, Sequence::parse("ABC-CAB-BCA"), 100);
  CHECK_FALSE(bad.purified);
}

TEST_CASE("trajectory bookkeeping") {
  const RunResult r = run_sequence(white(0.7), kABC, Sequence::parse("AB"), 2);
  REQUIRE(r.trajectory.size() == 4);
  CHECK(r.trajectory[0].repetition == 0);
  CHECK(r.trajectory[0].step == 0);
  CHECK(r.trajectory[0].color == 0);
  CHECK(r.trajectory[3].repetition == 1);
  CHECK(r.trajectory[3].step == 1);
  CHECK(r.trajectory[3].color == 1);
}

TEST_CASE("find_threshold is deterministic and brackets purifiability") {
  const Sequence seq = Sequence::parse("ABC");
  const double th = find_threshold(NoiseKind::white, kStar, kABC, seq);
  CHECK(th == find_threshold(NoiseKind::white, kStar, kABC, seq));
  CHECK(run_sequence(white(th), kABC, seq, 500).purified);
  CHECK_FALSE(run_sequence(white(th - 2e-4), kABC, seq, 500).purified);
}

TEST_CASE("adaptive switching rule") {
  const Sequence s1 = Sequence::parse("ABC-CBA-ABC");
  const Sequence s2 = Sequence::parse("BAB-CAB-ABA");
  const HBState in = white(0.62);

  // a.x > b always: switches permanently, but never during the first pass.
  AdaptiveConfig always{s1, s2, {0.0, 0.0, 0.0}, -1.0};
  const AdaptiveRunResult r1 = adaptive_run(in, kABC, always);
  CHECK(r1.switch_event.switched);
  CHECK(r1.switch_event.repetition >= 1);
  CHECK(r1.switch_event.ax > always.b);

  // a.x > b never: pure S1 run.
  AdaptiveConfig never{s1, s2, {0.0, 0.0, 0.0}, 1.0};
  const AdaptiveRunResult r2 = adaptive_run(in, kABC, never);
  CHECK_FALSE(r2.switch_event.switched);
  const RunResult plain = run_sequence(in, kABC, s1, 500);
  CHECK(fidelity(r2.final_state) == doctest::Approx(fidelity(plain.final_state)));
}

TEST_CASE("monte-carlo mode: deterministic per seed, counts track probabilities") {
  const AdaptiveConfig cfg{Sequence::parse("ABC-CBA-ABC"), Sequence::parse("BAB-CAB-ABA"),
                           {0.33, 0.35, 0.32}, 0.35};
  const HBState in = white(0.62);
  const MonteCarloConfig mc{42, 100000};

  const AdaptiveRunResult a = adaptive_run(in, kABC, cfg, {}, mc);
  const AdaptiveRunResult b = adaptive_run(in, kABC, cfg, {}, mc);
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    CHECK(a.trajectory[i].pool == b.trajectory[i].pool);
    CHECK(a.trajectory[i].fidelity == b.trajectory[i].fidelity);
  }

  // With 5e4 pairs the first-step yield is close to its expectation.
  REQUIRE(!a.trajectory.empty());
  const TrajectoryPoint& first = a.trajectory.front();
  const double expected = 50000.0 * first.p_pattern * first.p_keep;
  CHECK(std::abs(first.pool - expected) / expected < 0.05);

  // A tiny pool exhausts.
  const AdaptiveRunResult tiny = adaptive_run(in, kABC, cfg, {}, MonteCarloConfig{7, 8});
  CHECK(tiny.status == RunStatus::exhausted);
  CHECK(tiny.error == "monte-carlo pool exhausted");
}

TEST_CASE("sequence search ranks candidates") {
  ConvergenceConfig fast;
  fast.max_repetitions = 200;
  const auto ranked = search_sequences(NoiseKind::white, kStar, kABC, 3, SearchSpace::full, fast, 1e-3, 1);
  REQUIRE(ranked.size() == 27);
  for (std::size_t i = 1; i < ranked.size(); ++i) CHECK(ranked[i - 1].p_min <= ranked[i].p_min);
  // Single-color sequences never purify.
  CHECK(ranked.back().p_min == doctest::Approx(1.0));

  const auto perms = search_sequences(NoiseKind::white, kStar, kABC, 3, SearchSpace::triple_perms, fast, 1e-3, 2);
  CHECK(perms.size() == 6);
}

TEST_CASE("yield accounting") {
  // Pure target: every round keeps 1/4 of the pairs, so 8x inputs per round.
  const HBState pure = HBState::pure_target(kStar);
  const Sequence seq = Sequence::parse("ABC");
  CHECK(yield_estimate(pure, kABC, seq, 1, false).inputs_per_output == doctest::Approx(8.0));
  CHECK(yield_estimate(pure, kABC, seq, 2, false).inputs_per_output == doctest::Approx(64.0));

  // Ledger conservation on a noisy input.
  const YieldLedger y = yield_estimate(white(0.8), kABC, seq, 3, false);
  for (const RoundLedger& row : y.rounds) {
    CHECK(row.inputs == doctest::Approx(2.0 * row.pairs));
    CHECK(row.pairs == doctest::Approx(row.kept + row.discarded + row.recycled).epsilon(1e-9));
    CHECK(row.recycled == 0.0);
  }
  CHECK(y.inputs_per_output == doctest::Approx(1.0 / y.outputs));

  // Recycling only adds outputs.
  const YieldLedger yr = yield_estimate(white(0.8), kABC, seq, 3, true);
  CHECK(yr.outputs >= y.outputs);
  CHECK(yr.inputs_per_output == doctest::Approx(1.0 / yr.outputs));
  CHECK(yr.final_fidelity == doctest::Approx(y.final_fidelity));
}

TEST_CASE("recycle_compare reports non-negative gains") {
  const auto pts = recycle_compare(kStar, kABC, {0.90, 0.93});
  REQUIRE(pts.size() == 2);
  for (const RecycleComparePoint& pt : pts) {
    CHECK(pt.f3 > pt.f0);
    CHECK(pt.outputs_plain > 0);
    CHECK(pt.outputs_extra >= 0);
    CHECK(pt.extra_fraction == doctest::Approx(pt.outputs_extra / pt.outputs_plain));
  }
}
