// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#include "hgpurify.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "core/experiments.hpp"
#include "core/protocol.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Exceptions from the core map onto the status codes: invalid_argument is a
// parse/config problem, runtime_error a numerical one.
template <typename Fn>
hgp_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return HGP_PARSE_ERROR;
  } catch (const std::out_of_range& e) {
    g_last_error = e.what();
    return HGP_PARSE_ERROR;
  } catch (const std::runtime_error& e) {
    g_last_error = e.what();
    return HGP_NUMERIC_ERROR;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return HGP_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HGP_INTERNAL_ERROR;
  }
}

hgp_status require_args(bool ok) {
  if (!ok) g_last_error = "null argument";
  return ok ? HGP_OK : HGP_INVALID_ARGUMENT;
}

}  // namespace

struct hgp_hypergraph {
  hgp::EdgeSet es;
};

struct hgp_state {
  hgp::HBState state;
};

namespace {

template <typename Fn>
hgp_status rewrite(const hgp_hypergraph* h, hgp_hypergraph** out, Fn&& fn) {
  if (hgp_status st = require_args(h && out); st != HGP_OK) return st;
  return guarded([&] {
    *out = new hgp_hypergraph{fn(h->es)};
    return HGP_OK;
  });
}

}  // namespace

extern "C" {

const char* hgp_last_error(void) { return g_last_error.c_str(); }

void hgp_string_free(char* s) { std::free(s); }

hgp_status hgp_hypergraph_parse(const char* text, hgp_hypergraph** out) {
  if (hgp_status st = require_args(text && out); st != HGP_OK) return st;
  return guarded([&] {
    *out = new hgp_hypergraph{hgp::EdgeSet::parse(text)};
    return HGP_OK;
  });
}

hgp_status hgp_hypergraph_format(const hgp_hypergraph* h, char** out) {
  if (hgp_status st = require_args(h && out); st != HGP_OK) return st;
  return guarded([&] {
    *out = dup_string(h->es.to_text());
    return *out ? HGP_OK : HGP_INTERNAL_ERROR;
  });
}

void hgp_hypergraph_free(hgp_hypergraph* h) { delete h; }

hgp_status hgp_hypergraph_n_vertices(const hgp_hypergraph* h, int* out) {
  if (hgp_status st = require_args(h && out); st != HGP_OK) return st;
  *out = h->es.n_vertices();
  return HGP_OK;
}

hgp_status hgp_hypergraph_apply_z(const hgp_hypergraph* h, int v, hgp_hypergraph** out) {
  return rewrite(h, out, [v](const hgp::EdgeSet& es) { return hgp::apply_Z(es, v); });
}

hgp_status hgp_hypergraph_apply_x(const hgp_hypergraph* h, int v, hgp_hypergraph** out) {
  return rewrite(h, out, [v](const hgp::EdgeSet& es) { return hgp::apply_X(es, v); });
}

hgp_status hgp_hypergraph_apply_cnot(const hgp_hypergraph* h, int control, int target, hgp_hypergraph** out) {
  return rewrite(h, out, [=](const hgp::EdgeSet& es) { return hgp::apply_cnot(es, control, target); });
}

hgp_status hgp_hypergraph_reduce(const hgp_hypergraph* h, int v1, int v2, hgp_hypergraph** out) {
  return rewrite(h, out, [=](const hgp::EdgeSet& es) { return hgp::reduce(es, v1, v2); });
}

hgp_status hgp_state_pure(const hgp_hypergraph* target, hgp_state** out) {
  if (hgp_status st = require_args(target && out); st != HGP_OK) return st;
  return guarded([&] {
    *out = new hgp_state{hgp::HBState::pure_target(target->es)};
    return HGP_OK;
  });
}

hgp_status hgp_state_apply_noise(const hgp_state* s, const char* kind, double p, hgp_state** out) {
  if (hgp_status st = require_args(s && kind && out); st != HGP_OK) return st;
  return guarded([&] {
    *out = new hgp_state{hgp::apply_noise(s->state, {hgp::noise_kind_from_text(kind), p})};
    return HGP_OK;
  });
}

hgp_status hgp_state_fidelity(const hgp_state* s, double* out) {
  if (hgp_status st = require_args(s && out); st != HGP_OK) return st;
  return guarded([&] {
    *out = hgp::fidelity(s->state);
    return HGP_OK;
  });
}

hgp_status hgp_state_snapshot_json(const hgp_state* s, char** out) {
  if (hgp_status st = require_args(s && out); st != HGP_OK) return st;
  return guarded([&] {
    nlohmann::json j;
    const hgp::EdgeSet& target = s->state.target();
    j["n"] = target.n_vertices();
    nlohmann::json edges = nlohmann::json::array();
    for (hgp::EdgeMask e : target.edges()) {
      nlohmann::json edge = nlohmann::json::array();
      for (int v = 1; v <= target.n_vertices(); ++v)
        if (e & (hgp::EdgeMask{1} << (v - 1))) edge.push_back(v);
      edges.push_back(edge);
    }
    j["edges"] = edges;
    j["trace"] = s->state.trace();
    j["fidelity"] = hgp::fidelity(s->state);
    nlohmann::json rows = nlohmann::json::array();
    const auto& c = s->state.coeffs();
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      for (Eigen::Index k = 0; k < c.cols(); ++k)
        rows.push_back({c(i, k).real(), c(i, k).imag()});
    j["c_matrix"] = rows;
    *out = dup_string(j.dump(2) + "\n");
    return *out ? HGP_OK : HGP_INTERNAL_ERROR;
  });
}

hgp_status hgp_state_subprotocol(const hgp_state* s, const char* coloring, char color, hgp_state** out_state,
                                 double* out_p_pattern, double* out_p_keep) {
  if (hgp_status st = require_args(s && coloring && out_state); st != HGP_OK) return st;
  return guarded([&] {
    const hgp::Coloring col = hgp::Coloring::parse(coloring);
    if (color < 'A' || color >= 'A' + col.n_colors()) throw std::invalid_argument("subprotocol: bad color");
    hgp::SubprotocolResult res = hgp::subprotocol_keep(s->state, color - 'A', col);
    *out_state = new hgp_state{std::move(res.kept)};
    if (out_p_pattern) *out_p_pattern = res.p_pattern;
    if (out_p_keep) *out_p_keep = res.p_keep;
    return HGP_OK;
  });
}

void hgp_state_free(hgp_state* s) { delete s; }

hgp_status hgp_run_experiment(const char* config_json, uint64_t seed, int has_seed, int workers,
                              char** out_filename, char** out_content) {
  if (hgp_status st = require_args(config_json && out_filename && out_content); st != HGP_OK) return st;
  return guarded([&] {
    std::optional<std::uint64_t> seed_opt;
    if (has_seed) seed_opt = seed;
    hgp::ExperimentResult res = hgp::run_experiment(config_json, seed_opt, workers);
    *out_filename = dup_string(res.filename);
    *out_content = dup_string(res.content);
    if (!*out_filename || !*out_content) return HGP_INTERNAL_ERROR;
    return HGP_OK;
  });
}

hgp_status hgp_verify(uint64_t seed, int* out_mismatches, char** out_report) {
  if (hgp_status st = require_args(out_mismatches != nullptr); st != HGP_OK) return st;
  return guarded([&] {
    hgp::VerifyReport rep = hgp::verify(seed);
    *out_mismatches = rep.rewrite_mismatches + rep.protocol_mismatches;
    if (out_report) {
      *out_report = dup_string(rep.text);
      if (!*out_report) return HGP_INTERNAL_ERROR;
    }
    return HGP_OK;
  });
}

}  // extern "C"
