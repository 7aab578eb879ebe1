// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#include "core/experiments.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "core/dense.hpp"
#include "core/protocol.hpp"
#include "core/oracle_checks.hpp"
#include "core/schedule.hpp"

namespace hgp {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

[[noreturn]] void config_error(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) config_error(where + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) ok = true;
    if (!ok) config_error(where + ": unknown key \"" + item.key() + "\"");
  }
}

const json& require(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) config_error(where + ": missing key \"" + std::string(key) + "\"");
  return *it;
}

struct TargetCfg {
  EdgeSet target;
  Coloring coloring;
};

TargetCfg parse_target(const json& cfg) {
  TargetCfg t{EdgeSet::parse(require(cfg, "config", "target").get<std::string>()),
              Coloring::parse(require(cfg, "config", "coloring").get<std::string>())};
  if (static_cast<int>(t.coloring.color.size()) != t.target.n_vertices())
    config_error("coloring length does not match the number of vertices");
  return t;
}

NoiseSpec parse_noise(const json& cfg, bool needs_p) {
  const json& noise = require(cfg, "config", "noise");
  if (needs_p) {
    check_keys(noise, "noise", {"kind", "p"});
    return {noise_kind_from_text(require(noise, "noise", "kind").get<std::string>()),
            require(noise, "noise", "p").get<double>()};
  }
  check_keys(noise, "noise", {"kind"});
  return {noise_kind_from_text(require(noise, "noise", "kind").get<std::string>()), 1.0};
}

ConvergenceConfig parse_convergence(const json& cfg) {
  ConvergenceConfig conv;
  auto it = cfg.find("convergence");
  if (it == cfg.end()) return conv;
  check_keys(*it, "convergence",
             {"fidelity_target", "max_repetitions", "stagnation_eps", "stagnation_fidelity", "decreasing_limit"});
  conv.fidelity_target = it->value("fidelity_target", conv.fidelity_target);
  conv.max_repetitions = it->value("max_repetitions", conv.max_repetitions);
  conv.stagnation_eps = it->value("stagnation_eps", conv.stagnation_eps);
  conv.stagnation_fidelity = it->value("stagnation_fidelity", conv.stagnation_fidelity);
  conv.decreasing_limit = it->value("decreasing_limit", conv.decreasing_limit);
  return conv;
}

AdaptiveConfig parse_adaptive(const json& cfg) {
  const json& a = require(cfg, "config", "adaptive");
  check_keys(a, "adaptive", {"s1", "s2", "a", "b"});
  AdaptiveConfig out;
  out.s1 = Sequence::parse(require(a, "adaptive", "s1").get<std::string>());
  out.s2 = Sequence::parse(require(a, "adaptive", "s2").get<std::string>());
  const json& weights = require(a, "adaptive", "a");
  if (!weights.is_array() || weights.size() != 3) config_error("adaptive: \"a\" must be a 3-vector");
  for (int i = 0; i < 3; ++i) out.a[i] = weights[i].get<double>();
  out.b = require(a, "adaptive", "b").get<double>();
  return out;
}

const char* status_text(RunStatus st) {
  switch (st) {
    case RunStatus::completed: return "completed";
    case RunStatus::converged: return "converged";
    case RunStatus::stagnated: return "stagnated";
    case RunStatus::decreasing: return "decreasing";
    case RunStatus::exhausted: return "exhausted";
    case RunStatus::failed: return "failed";
  }
  return "unknown";
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& traj) {
  std::string out = "repetition,step,color,fidelity,p_keep,p_pattern\n";
  for (const TrajectoryPoint& p : traj) {
    out += std::to_string(p.repetition) + ',' + std::to_string(p.step) + ',';
    out += static_cast<char>('A' + p.color);
    out += ',' + fmt(p.fidelity) + ',' + fmt(p.p_keep) + ',' + fmt(p.p_pattern) + '\n';
  }
  return out;
}

ExperimentResult cmd_run(const json& cfg) {
  check_keys(cfg, "config", {"command", "target", "coloring", "noise", "sequence", "repetitions"});
  TargetCfg t = parse_target(cfg);
  NoiseSpec noise = parse_noise(cfg, true);
  Sequence seq = Sequence::parse(require(cfg, "config", "sequence").get<std::string>());
  const int reps = require(cfg, "config", "repetitions").get<int>();
  if (reps <= 0) config_error("repetitions must be positive");

  HBState sigma0 = apply_noise(HBState::pure_target(t.target), noise);
  RunResult res = run_sequence(sigma0, t.coloring, seq, reps);
  if (res.status == RunStatus::failed) throw std::runtime_error("run: " + res.error);
  return {"run.csv", trajectory_csv(res.trajectory)};
}

ExperimentResult cmd_threshold(const json& cfg, int workers) {
  (void)workers;
  check_keys(cfg, "config",
             {"command", "target", "coloring", "noise", "sequence", "adaptive", "resolution", "convergence"});
  TargetCfg t = parse_target(cfg);
  NoiseSpec noise = parse_noise(cfg, false);
  ConvergenceConfig conv = parse_convergence(cfg);
  const double resolution = cfg.value("resolution", 1e-4);
  const bool has_seq = cfg.contains("sequence");
  if (has_seq == cfg.contains("adaptive"))
    config_error("threshold: give exactly one of \"sequence\" or \"adaptive\"");

  json out;
  out["command"] = "threshold";
  out["target"] = t.target.to_text();
  out["coloring"] = t.coloring.to_text();
  out["noise"] = noise_kind_to_text(noise.kind);
  if (has_seq) {
    Sequence seq = Sequence::parse(cfg.at("sequence").get<std::string>());
    out["sequence"] = seq.to_text();
    out["p_min"] = find_threshold(noise.kind, t.target, t.coloring, seq, conv, resolution);
  } else {
    AdaptiveConfig acfg = parse_adaptive(cfg);
    out["adaptive"] = {{"s1", acfg.s1.to_text()}, {"s2", acfg.s2.to_text()},
                       {"a", {acfg.a[0], acfg.a[1], acfg.a[2]}}, {"b", acfg.b}};
    out["p_min"] = find_threshold_adaptive(noise.kind, t.target, t.coloring, acfg, conv, resolution);
  }
  return {"threshold.json", out.dump(2) + "\n"};
}

ExperimentResult cmd_search(const json& cfg, int workers) {
  check_keys(cfg, "config",
             {"command", "target", "coloring", "noise", "length", "space", "resolution", "convergence"});
  TargetCfg t = parse_target(cfg);
  NoiseSpec noise = parse_noise(cfg, false);
  ConvergenceConfig conv = parse_convergence(cfg);
  const double resolution = cfg.value("resolution", 1e-4);
  const int length = cfg.value("length", 9);
  const std::string space_text = cfg.value("space", std::string("triple_perms"));
  SearchSpace space;
  if (space_text == "triple_perms")
    space = SearchSpace::triple_perms;
  else if (space_text == "full")
    space = SearchSpace::full;
  else
    config_error("search: space must be \"triple_perms\" or \"full\"");

  std::vector<SearchEntry> ranked =
      search_sequences(noise.kind, t.target, t.coloring, length, space, conv, resolution, workers);
  std::string out = "rank,sequence,p_min\n";
  for (std::size_t i = 0; i < ranked.size(); ++i)
    out += std::to_string(i + 1) + ',' + ranked[i].seq.to_text() + ',' + fmt(ranked[i].p_min) + '\n';
  return {"search.csv", out};
}

ExperimentResult cmd_adaptive(const json& cfg, std::optional<std::uint64_t> seed_override) {
  check_keys(cfg, "config",
             {"command", "target", "coloring", "noise", "adaptive", "mode", "pool", "seed", "convergence"});
  TargetCfg t = parse_target(cfg);
  NoiseSpec noise = parse_noise(cfg, true);
  AdaptiveConfig acfg = parse_adaptive(cfg);
  ConvergenceConfig conv = parse_convergence(cfg);
  const std::string mode = cfg.value("mode", std::string("exact"));
  std::optional<MonteCarloConfig> mc;
  if (mode == "monte_carlo") {
    MonteCarloConfig m;
    if (seed_override)
      m.seed = *seed_override;
    else if (cfg.contains("seed"))
      m.seed = cfg.at("seed").get<std::uint64_t>();
    else
      config_error("adaptive: monte_carlo mode requires an explicit seed");
    m.pool = require(cfg, "config", "pool").get<std::int64_t>();
    mc = m;
  } else if (mode != "exact") {
    config_error("adaptive: mode must be \"exact\" or \"monte_carlo\"");
  }

  HBState sigma0 = apply_noise(HBState::pure_target(t.target), noise);
  AdaptiveRunResult res = adaptive_run(sigma0, t.coloring, acfg, conv, mc);

  json out;
  out["command"] = "adaptive";
  out["mode"] = mode;
  out["status"] = status_text(res.status);
  out["purified"] = res.purified;
  if (!res.error.empty()) out["error"] = res.error;
  out["final_fidelity"] = res.trajectory.empty() ? fidelity(sigma0) : res.trajectory.back().fidelity;
  json sw;
  sw["switched"] = res.switch_event.switched;
  if (res.switch_event.switched) {
    sw["repetition"] = res.switch_event.repetition;
    sw["step"] = res.switch_event.step;
    sw["color"] = std::string(1, static_cast<char>('A' + res.switch_event.color));
    sw["ax"] = res.switch_event.ax;
  }
  out["switch"] = sw;
  json traj = json::array();
  for (const TrajectoryPoint& p : res.trajectory) {
    json row = {{"repetition", p.repetition},
                {"step", p.step},
                {"color", std::string(1, static_cast<char>('A' + p.color))},
                {"fidelity", p.fidelity},
                {"p_keep", p.p_keep},
                {"p_pattern", p.p_pattern}};
    if (mc) row["pool"] = p.pool;
    traj.push_back(std::move(row));
  }
  out["trajectory"] = traj;
  return {"adaptive.json", out.dump(2) + "\n"};
}

ExperimentResult cmd_yield(const json& cfg) {
  check_keys(cfg, "config", {"command", "target", "coloring", "noise", "f0", "sequence", "rounds", "recycle"});
  TargetCfg t = parse_target(cfg);
  if (cfg.contains("noise") == cfg.contains("f0"))
    config_error("yield: give exactly one of \"noise\" or \"f0\" (white noise of that fidelity)");
  HBState sigma0 = HBState::pure_target(t.target);
  if (cfg.contains("f0")) {
    sigma0 = apply_noise(
        sigma0, {NoiseKind::white, white_noise_p_for_fidelity(t.target.n_vertices(), cfg.at("f0").get<double>())});
  } else {
    NoiseSpec noise = parse_noise(cfg, true);
    sigma0 = apply_noise(sigma0, noise);
  }
  Sequence seq = Sequence::parse(require(cfg, "config", "sequence").get<std::string>());
  const int rounds = require(cfg, "config", "rounds").get<int>();
  const bool recycle = cfg.value("recycle", false);

  YieldLedger led = yield_estimate(sigma0, t.coloring, seq, rounds, recycle);
  json out;
  out["command"] = "yield";
  out["rounds"] = rounds;
  out["recycle"] = recycle;
  out["inputs_per_output"] = led.inputs_per_output;
  out["outputs"] = led.outputs;
  out["final_fidelity"] = led.final_fidelity;
  json rows = json::array();
  for (const RoundLedger& r : led.rounds)
    rows.push_back({{"round", r.round},
                    {"inputs", r.inputs},
                    {"pairs", r.pairs},
                    {"kept", r.kept},
                    {"discarded", r.discarded},
                    {"recycled", r.recycled},
                    {"p_pattern", r.p_pattern},
                    {"p_keep", r.p_keep}});
  out["ledger"] = rows;
  return {"yield.json", out.dump(2) + "\n"};
}

ExperimentResult cmd_recycle_compare(const json& cfg) {
  check_keys(cfg, "config", {"command", "target", "coloring", "f0_grid", "rounds"});
  TargetCfg t = parse_target(cfg);
  const json& grid = require(cfg, "config", "f0_grid");
  if (!grid.is_array() || grid.empty()) config_error("recycle_compare: f0_grid must be a nonempty array");
  std::vector<double> f0s;
  for (const json& v : grid) f0s.push_back(v.get<double>());
  const int rounds = cfg.value("rounds", 3);

  std::vector<RecycleComparePoint> rows = recycle_compare(t.target, t.coloring, f0s, rounds);
  std::string out = "f0,f3,outputs_plain,outputs_extra,extra_fraction\n";
  for (const RecycleComparePoint& p : rows)
    out += fmt(p.f0) + ',' + fmt(p.f3) + ',' + fmt(p.outputs_plain) + ',' + fmt(p.outputs_extra) + ',' +
           fmt(p.extra_fraction) + '\n';
  return {"recycle_compare.csv", out};
}

}  // namespace

ExperimentResult run_experiment(const std::string& config_json, std::optional<std::uint64_t> seed_override,
                                int workers) {
  json cfg;
  try {
    cfg = json::parse(config_json);
  } catch (const json::exception& e) {
    config_error(e.what());
  }
  if (!cfg.is_object()) config_error("top level must be a JSON object");
  const std::string command = require(cfg, "config", "command").get<std::string>();
  try {
    if (command == "run") return cmd_run(cfg);
    if (command == "threshold") return cmd_threshold(cfg, workers);
    if (command == "search") return cmd_search(cfg, workers);
    if (command == "adaptive") return cmd_adaptive(cfg, seed_override);
    if (command == "yield") return cmd_yield(cfg);
    if (command == "recycle_compare") return cmd_recycle_compare(cfg);
  } catch (const json::exception& e) {
    config_error(e.what());
  }
  config_error("unknown command \"" + command + "\"");
}

// ---------------------------------------------------------------------------
// verify: rewrite rules and protocol maps against the dense simulator.

VerifyReport verify(std::uint64_t seed) {
  VerifyReport rep;
  std::mt19937_64 rng(seed);

  // Exhaustive rewrite checks for n <= 3, random edge sets for n in {4, 5}.
  for (int n = 1; n <= 3; ++n) {
    const std::vector<EdgeMask> pool = checks::all_possible_edges(n);
    for (std::uint32_t bits = 0; bits < (1u << pool.size()); ++bits) {
      std::vector<EdgeMask> edges;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (bits & (1u << i)) edges.push_back(pool[i]);
      rep.rewrite_mismatches += checks::check_rewrites(EdgeSet(n, std::move(edges)));
    }
  }
  for (int n = 4; n <= 5; ++n) {
    const std::vector<EdgeMask> pool = checks::all_possible_edges(n);
    std::bernoulli_distribution coin(0.3);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<EdgeMask> edges;
      for (EdgeMask e : pool)
        if (coin(rng)) edges.push_back(e);
      rep.rewrite_mismatches += checks::check_rewrites(EdgeSet(n, std::move(edges)));
    }
  }

  // Protocol maps on random 3-qubit mixed states.
  const EdgeSet target = EdgeSet::parse("3; {1,2,3}");
  const Coloring coloring = Coloring::parse("ABC");
  for (int trial = 0; trial < 20; ++trial)
    rep.protocol_mismatches += checks::check_protocol(checks::random_state(target, rng), trial % 3, coloring);

  std::ostringstream os;
  os << "rewrite/oracle mismatches: " << rep.rewrite_mismatches << "\n";
  os << "protocol/oracle mismatches: " << rep.protocol_mismatches << "\n";
  os << ((rep.rewrite_mismatches + rep.protocol_mismatches) == 0 ? "OK" : "FAILED") << "\n";
  rep.text = os.str();
  return rep;
}

}  // namespace hgp
