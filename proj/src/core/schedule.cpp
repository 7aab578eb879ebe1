// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#include "core/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace hgp {

Sequence Sequence::parse(const std::string& text) {
  Sequence seq;
  for (char ch : text) {
    if (ch == '-' || ch == ' ' || ch == '\t') continue;
    if (ch >= 'A' && ch <= 'Z')
      seq.steps.push_back(ch - 'A');
    else if (ch >= 'a' && ch <= 'z')
      seq.steps.push_back(ch - 'a');
    else
      throw std::invalid_argument("sequence: unexpected character '" + std::string(1, ch) + "'");
  }
  if (seq.steps.empty()) throw std::invalid_argument("sequence: empty");
  return seq;
}

std::string Sequence::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0 && i % 3 == 0) out += '-';
    out += static_cast<char>('A' + steps[i]);
  }
  return out;
}

namespace {

void check_sequence(const Sequence& seq, const Coloring& coloring) {
  for (int c : seq.steps)
    if (c < 0 || c >= coloring.n_colors()) throw std::invalid_argument("sequence: color out of range");
}

// Convergence bookkeeping shared by every runner. Feed one fidelity per
// completed pass; returns a status once the run should stop.
struct ConvergenceTracker {
  const ConvergenceConfig& conv;
  double prev;
  int decreasing = 0;

  explicit ConvergenceTracker(const ConvergenceConfig& c, double f0) : conv(c), prev(f0) {}

  std::optional<RunStatus> update(double f) {
    if (f >= conv.fidelity_target) return RunStatus::converged;
    if (std::abs(f - prev) < conv.stagnation_eps && f < conv.stagnation_fidelity) {
      prev = f;
      return RunStatus::stagnated;
    }
    if (f < prev) {
      if (++decreasing >= conv.decreasing_limit) {
        prev = f;
        return RunStatus::decreasing;
      }
    } else {
      decreasing = 0;
    }
    prev = f;
    return std::nullopt;
  }
};

}  // namespace

RunResult run_sequence(const HBState& sigma0, const Coloring& coloring, const Sequence& seq, int repetitions) {
  check_sequence(seq, coloring);
  RunResult out;
  HBState s = sigma0.normalized();
  for (int rep = 0; rep < repetitions; ++rep) {
    for (std::size_t pos = 0; pos < seq.steps.size(); ++pos) {
      const int c = seq.steps[pos];
      SubprotocolResult r;
      try {
        r = subprotocol_keep(s, c, coloring);
      } catch (const std::exception& e) {
        out.status = RunStatus::failed;
        out.error = e.what();
        out.final_state = s;
        return out;
      }
      s = std::move(r.kept);
      out.trajectory.push_back({rep, static_cast<int>(pos), c, fidelity(s), r.p_keep, r.p_pattern});
    }
  }
  out.final_state = s;
  out.purified = fidelity(s) >= ConvergenceConfig{}.fidelity_target;
  return out;
}

namespace {

bool purifiable_fixed(const HBState& sigma0, const Coloring& coloring, const Sequence& seq,
                      const ConvergenceConfig& conv) {
  HBState s = sigma0.normalized();
  ConvergenceTracker tracker(conv, fidelity(s));
  if (tracker.prev >= conv.fidelity_target) return true;
  for (int rep = 0; rep < conv.max_repetitions; ++rep) {
    for (int c : seq.steps) {
      try {
        s = subprotocol_keep(s, c, coloring).kept;
      } catch (const std::exception&) {
        return false;
      }
    }
    if (auto st = tracker.update(fidelity(s))) return *st == RunStatus::converged;
  }
  return false;
}

// Bisection on a monotone purifiability predicate over p in [0, 1]. p = 1 is
// the noiseless state and always purifiable; returns the purifiable endpoint.
template <typename Pred>
double bisect_threshold(Pred&& purifiable_at, double resolution) {
  if (resolution <= 0) throw std::invalid_argument("threshold: resolution must be positive");
  double lo = 0.0, hi = 1.0;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (purifiable_at(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

double find_threshold(NoiseKind kind, const EdgeSet& target, const Coloring& coloring, const Sequence& seq,
                      const ConvergenceConfig& conv, double resolution) {
  check_sequence(seq, coloring);
  const HBState pure = HBState::pure_target(target);
  return bisect_threshold(
      [&](double p) { return purifiable_fixed(apply_noise(pure, NoiseSpec{kind, p}), coloring, seq, conv); }, resolution);
}

AdaptiveRunResult adaptive_run(const HBState& sigma0, const Coloring& coloring, const AdaptiveConfig& cfg,
                               const ConvergenceConfig& conv, const std::optional<MonteCarloConfig>& mc) {
  check_sequence(cfg.s1, coloring);
  check_sequence(cfg.s2, coloring);
  if (mc && mc->pool < 2) throw std::invalid_argument("adaptive: monte-carlo pool must hold at least one pair");

  AdaptiveRunResult out;
  HBState s = sigma0.normalized();
  const Sequence* active = &cfg.s1;
  bool switched = false;
  std::vector<std::vector<double>> history(coloring.n_colors());
  std::mt19937_64 rng(mc ? mc->seed : 0);
  std::int64_t pool = mc ? mc->pool : 0;

  ConvergenceTracker tracker(conv, fidelity(s));
  if (tracker.prev >= conv.fidelity_target) {
    out.purified = true;
    out.status = RunStatus::converged;
    out.final_state = s;
    return out;
  }

  for (int rep = 0; rep < conv.max_repetitions; ++rep) {
    for (std::size_t pos = 0; pos < active->steps.size(); ++pos) {
      const int c = active->steps[pos];
      SubprotocolResult r;
      try {
        r = subprotocol_keep(s, c, coloring);
      } catch (const std::exception& e) {
        out.status = RunStatus::failed;
        out.error = e.what();
        out.final_state = s;
        return out;
      }
      double p_minus = r.p_minus;
      if (mc) {
        const std::int64_t pairs = pool / 2;
        std::int64_t pattern = 0, kept = 0;
        if (pairs > 0) {
          std::binomial_distribution<std::int64_t> d_pat(pairs, std::clamp(r.p_pattern, 0.0, 1.0));
          pattern = d_pat(rng);
        }
        if (pattern > 0) {
          std::binomial_distribution<std::int64_t> d_keep(pattern, std::clamp(r.p_keep, 0.0, 1.0));
          kept = d_keep(rng);
        }
        if (kept <= 0) {
          out.status = RunStatus::exhausted;
          out.error = "monte-carlo pool exhausted";
          out.final_state = s;
          return out;
        }
        p_minus = static_cast<double>(pattern - kept) / static_cast<double>(pattern);
        pool = kept;
      }
      s = std::move(r.kept);
      out.trajectory.push_back(
          {rep, static_cast<int>(pos), c, fidelity(s), r.p_keep, r.p_pattern, mc ? pool : 0});
      if (!switched) {
        auto& h = history[c];
        h.push_back(p_minus);
        if (h.size() > 3) h.erase(h.begin());
        // The first pass only sees the raw input's transient statistics;
        // the switch rule watches how the run progresses after that.
        if (h.size() == 3 && rep >= 1) {
          const double ax = cfg.a[0] * h[0] + cfg.a[1] * h[1] + cfg.a[2] * h[2];
          if (ax > cfg.b) {
            switched = true;
            out.switch_event = {true, rep, static_cast<int>(pos), c, ax};
            active = &cfg.s2;  // restarts at step 0 on the next pass
            break;
          }
        }
      }
    }
    if (auto st = tracker.update(fidelity(s))) {
      out.status = *st;
      out.purified = *st == RunStatus::converged;
      out.final_state = s;
      return out;
    }
  }
  out.status = RunStatus::completed;
  out.final_state = s;
  return out;
}

double find_threshold_adaptive(NoiseKind kind, const EdgeSet& target, const Coloring& coloring,
                               const AdaptiveConfig& cfg, const ConvergenceConfig& conv, double resolution) {
  const HBState pure = HBState::pure_target(target);
  return bisect_threshold(
      [&](double p) {
        return adaptive_run(apply_noise(pure, NoiseSpec{kind, p}), coloring, cfg, conv, std::nullopt).purified;
      },
      resolution);
}

namespace {

// Lexicographically ordered permutations of (0, 1, 2).
constexpr std::array<std::array<int, 3>, 6> kTriplePerms = {
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

std::vector<Sequence> enumerate_candidates(int length, SearchSpace space) {
  std::vector<Sequence> out;
  if (space == SearchSpace::triple_perms) {
    if (length <= 0 || length % 3 != 0)
      throw std::invalid_argument("search: triple_perms needs a positive multiple of 3");
    const int blocks = length / 3;
    std::vector<int> idx(blocks, 0);
    for (;;) {
      Sequence seq;
      for (int b = 0; b < blocks; ++b)
        for (int c : kTriplePerms[idx[b]]) seq.steps.push_back(c);
      out.push_back(std::move(seq));
      int b = blocks - 1;
      while (b >= 0 && idx[b] == 5) idx[b--] = 0;
      if (b < 0) break;
      ++idx[b];
    }
  } else {
    if (length <= 0 || length > 16) throw std::invalid_argument("search: full space limited to length 16");
    std::vector<int> steps(length, 0);
    for (;;) {
      out.push_back(Sequence{steps});
      int b = length - 1;
      while (b >= 0 && steps[b] == 2) steps[b--] = 0;
      if (b < 0) break;
      ++steps[b];
    }
  }
  return out;
}

}  // namespace

std::vector<SearchEntry> search_sequences(NoiseKind kind, const EdgeSet& target, const Coloring& coloring,
                                          int length, SearchSpace space, const ConvergenceConfig& conv,
                                          double resolution, int workers) {
  if (coloring.n_colors() != 3) throw std::invalid_argument("search: expects a 3-coloring");
  std::vector<Sequence> candidates = enumerate_candidates(length, space);
  std::vector<SearchEntry> entries(candidates.size());

  auto score_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      entries[i] = {candidates[i], find_threshold(kind, target, coloring, candidates[i], conv, resolution)};
  };

  workers = std::max(1, workers);
  if (workers == 1 || candidates.size() < 2) {
    score_range(0, candidates.size());
  } else {
    const std::size_t n = candidates.size();
    const std::size_t nw = std::min<std::size_t>(workers, n);
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < nw; ++w)
      threads.emplace_back(score_range, n * w / nw, n * (w + 1) / nw);
    for (auto& t : threads) t.join();
  }

  std::stable_sort(entries.begin(), entries.end(), [](const SearchEntry& a, const SearchEntry& b) {
    if (a.p_min != b.p_min) return a.p_min < b.p_min;
    return a.seq.steps < b.seq.steps;
  });
  return entries;
}

namespace {

constexpr double kCohortPrune = 1e-10;
constexpr int kMaxRecycleGenerations = 4;

}  // namespace

YieldLedger yield_estimate(const HBState& sigma0, const Coloring& coloring, const Sequence& seq, int rounds,
                           bool recycle) {
  check_sequence(seq, coloring);
  if (rounds <= 0) throw std::invalid_argument("yield: rounds must be positive");

  YieldLedger led;
  led.rounds.resize(rounds);
  for (int r = 0; r < rounds; ++r) led.rounds[r].round = r;

  struct Cohort {
    HBState state;
    double count;
    int generation;
  };
  std::vector<Cohort> queue;
  queue.push_back({sigma0.normalized(), 1.0, 0});
  double outputs = 0;
  double product = 1.0;  // main-line prod of 2 / (p_pattern * p_keep)

  while (!queue.empty()) {
    Cohort cohort = std::move(queue.back());
    queue.pop_back();
    const bool main_line = cohort.generation == 0;
    HBState s = std::move(cohort.state);
    double count = cohort.count;
    bool dead = false;
    for (int r = 0; r < rounds && !dead; ++r) {
      const int color = seq.steps[r % seq.steps.size()];
      const double pairs = count / 2;
      RoundLedger& row = led.rounds[r];
      double kept_count = 0, recycled_count = 0;
      try {
        if (recycle) {
          auto [res, branches] = subprotocol_recycle(s, color, coloring);
          kept_count = pairs * res.p_pattern * res.p_keep;
          for (const RecycleBranch& br : branches) {
            const double c2 = pairs * br.probability;
            recycled_count += c2;
            if (c2 >= kCohortPrune && cohort.generation < kMaxRecycleGenerations)
              queue.push_back({br.state, c2, cohort.generation + 1});
          }
          if (main_line) {
            row.p_pattern = res.p_pattern;
            row.p_keep = res.p_keep;
            product *= 2.0 / (res.p_pattern * res.p_keep);
          }
          s = std::move(res.kept);
        } else {
          SubprotocolResult res = subprotocol_keep(s, color, coloring);
          kept_count = pairs * res.p_pattern * res.p_keep;
          if (main_line) {
            row.p_pattern = res.p_pattern;
            row.p_keep = res.p_keep;
            product *= 2.0 / (res.p_pattern * res.p_keep);
          }
          s = std::move(res.kept);
        }
      } catch (const std::exception&) {
        if (main_line) throw;
        dead = true;  // impossible keep branch: the whole cohort is lost
        kept_count = 0;
      }
      row.inputs += count;
      row.pairs += pairs;
      row.kept += kept_count;
      row.recycled += recycled_count;
      row.discarded += pairs - kept_count - recycled_count;
      count = kept_count;
    }
    if (!dead) {
      outputs += count;
      if (main_line) led.final_fidelity = fidelity(s);
    }
  }
  led.outputs = outputs;
  led.inputs_per_output = recycle ? 1.0 / outputs : product;
  return led;
}

std::vector<RecycleComparePoint> recycle_compare(const EdgeSet& target, const Coloring& coloring,
                                                 const std::vector<double>& f0_grid, int rounds) {
  if (coloring.n_colors() != 3) throw std::invalid_argument("recycle_compare: expects a 3-coloring");
  const HBState pure = HBState::pure_target(target);
  std::vector<RecycleComparePoint> out;
  out.reserve(f0_grid.size());

  constexpr double kPrune = 1e-12;
  constexpr int kMaxSteps = 40;

  for (double f0 : f0_grid) {
    RecycleComparePoint pt;
    pt.f0 = f0;
    const HBState sigma0 = apply_noise(pure, NoiseSpec{NoiseKind::white, white_noise_p_for_fidelity(target.n_vertices(), f0)});

    // Protocol 1: keep line only, one sub-protocol per color.
    {
      HBState s = sigma0;
      double count = 1.0;
      for (int r = 0; r < rounds; ++r) {
        SubprotocolResult res = subprotocol_keep(s, r % 3, coloring);
        count = (count / 2) * res.p_pattern * res.p_keep;
        s = std::move(res.kept);
      }
      pt.f3 = fidelity(s);
      pt.outputs_plain = count;
    }

    // Protocol 2: recycled copies re-enter as fresh cohorts and count as
    // extra outputs once they reach the keep line's final fidelity. Their
    // purification order is not prescribed anywhere; each step greedily
    // measures the color that gains the most fidelity.
    struct Cohort {
      HBState state;
      double count;
      int step;
      int generation;  // 0 = keep line, g >= 1 = recycled g times
    };
    std::vector<Cohort> queue;
    queue.push_back({sigma0, 1.0, 0, 0});
    double extra = 0;
    while (!queue.empty()) {
      Cohort cohort = std::move(queue.back());
      queue.pop_back();
      if (cohort.count < kPrune || cohort.step >= kMaxSteps) continue;
      const bool from_recycle = cohort.generation > 0;
      if (from_recycle && fidelity(cohort.state) >= pt.f3 - 1e-12) {
        extra += cohort.count;
        continue;
      }
      if (!from_recycle && cohort.step >= rounds) continue;  // keep line done; counted in outputs_plain
      int color = cohort.step % 3;
      try {
        if (from_recycle) {
          double best = -1;
          for (int c = 0; c < 3; ++c) {
            const double f = fidelity(subprotocol_keep(cohort.state, c, coloring).kept);
            if (f > best) {
              best = f;
              color = c;
            }
          }
        }
        auto [res, branches] = subprotocol_recycle(cohort.state, color, coloring);
        const double pairs = cohort.count / 2;
        // Deeper recycle generations contribute well below the count
        // precision; cap them to keep the cohort tree finite.
        if (cohort.generation < kMaxRecycleGenerations)
          for (const RecycleBranch& br : branches)
            if (pairs * br.probability >= kPrune)
              queue.push_back({br.state, pairs * br.probability, 0, cohort.generation + 1});
        queue.push_back({std::move(res.kept), pairs * res.p_pattern * res.p_keep, cohort.step + 1,
                         cohort.generation});
      } catch (const std::exception&) {
        // impossible keep branch: cohort is lost
      }
    }
    pt.outputs_extra = extra;
    pt.extra_fraction = extra / pt.outputs_plain;
    out.push_back(pt);
  }
  return out;
}

}  // namespace hgp
