// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#include "core/oracle_checks.hpp"

#include <cmath>
#include <cstdint>

#include "core/dense.hpp"
#include "core/hbasis.hpp"

namespace hgp::checks {

namespace {

using oracle::Mat;
using oracle::Vec;

bool vec_close(const Vec& a, const Vec& b, double tol) { return (a - b).cwiseAbs().maxCoeff() < tol; }

// Embeds a 2-qubit -> 1-qubit reduction at vertices (v1, v2) into n qubits;
// the output labels follow reduce(): v1 removed, higher labels shifted down.
Mat embed_reduction(int n, int v1, int v2, const Mat& r2) {
  const std::int64_t dim_in = std::int64_t{1} << n;
  const std::int64_t dim_out = std::int64_t{1} << (n - 1);
  Mat k = Mat::Zero(dim_out, dim_in);
  for (std::int64_t x = 0; x < dim_in; ++x) {
    const int x1 = static_cast<int>((x >> oracle::bit_of_vertex(n, v1)) & 1);
    const int x2 = static_cast<int>((x >> oracle::bit_of_vertex(n, v2)) & 1);
    std::int64_t y = 0;
    for (int u = 1; u <= n; ++u) {
      if (u == v1) continue;
      const int up = u < v1 ? u : u - 1;
      const int val = u == v2 ? 0 : static_cast<int>((x >> oracle::bit_of_vertex(n, u)) & 1);
      y |= std::int64_t{val} << oracle::bit_of_vertex(n - 1, up);
    }
    const int v2p = v2 < v1 ? v2 : v2 - 1;
    for (int o = 0; o < 2; ++o) {
      const oracle::Complex amp = r2(o, 2 * x1 + x2);
      if (amp == oracle::Complex{}) continue;
      const std::int64_t yo = y | (std::int64_t{o} << oracle::bit_of_vertex(n - 1, v2p));
      k(yo, x) = amp;
    }
  }
  return k;
}

}  // namespace

std::vector<EdgeMask> all_possible_edges(int n) {
  std::vector<EdgeMask> out;
  for (EdgeMask e = 1; e < (EdgeMask{1} << n); ++e) out.push_back(e);
  return out;
}

HBState random_state(const EdgeSet& target, std::mt19937_64& rng) {
  const std::int64_t dim = std::int64_t{1} << target.n_vertices();
  std::normal_distribution<double> g;
  Mat a(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i)
    for (std::int64_t j = 0; j < dim; ++j) a(i, j) = oracle::Complex{g(rng), g(rng)};
  Mat c = a * a.adjoint();
  return HBState(target, c / c.trace().real());
}

int check_rewrites(const EdgeSet& es) {
  int bad = 0;
  const int n = es.n_vertices();
  const Vec psi = oracle::build_state(es);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  for (int v = 1; v <= n; ++v) {
    Vec zpsi = psi;
    oracle::vec_apply_phase_edge(zpsi, oracle::state_mask(n, EdgeMask{1} << (v - 1)));
    if (!vec_close(zpsi, oracle::build_state(apply_Z(es, v)), kRewriteTol)) ++bad;

    Vec xpsi = psi;
    oracle::vec_apply_x(xpsi, oracle::bit_of_vertex(n, v));
    if (!vec_close(xpsi, oracle::build_state(apply_X(es, v)), kRewriteTol)) ++bad;

    if (n >= 2) {
      auto [e0, e1] = z_split(es, v);
      const Vec half0 = oracle::build_state(e0), half1 = oracle::build_state(e1);
      Vec rebuilt = Vec::Zero(psi.size());
      const int bit = oracle::bit_of_vertex(n, v);
      for (std::int64_t y = 0; y < half0.size(); ++y) {
        const std::int64_t low = y & ((std::int64_t{1} << bit) - 1);
        const std::int64_t high = (y >> bit) << (bit + 1);
        rebuilt[high | low] = inv_sqrt2 * half0[y];
        rebuilt[high | (std::int64_t{1} << bit) | low] = inv_sqrt2 * half1[y];
      }
      if (!vec_close(psi, rebuilt, kRewriteTol)) ++bad;
    }
  }

  for (int c = 1; c <= n; ++c)
    for (int t = 1; t <= n; ++t) {
      if (c == t) continue;
      Vec cpsi = psi;
      oracle::vec_apply_cnot(cpsi, oracle::bit_of_vertex(n, c), oracle::bit_of_vertex(n, t));
      if (!vec_close(cpsi, oracle::build_state(apply_cnot(es, c, t)), kRewriteTol)) ++bad;

      if (n >= 2) {
        const Vec reduced = embed_reduction(n, c, t, oracle::reduction_p()) * psi;
        if (!vec_close(reduced, inv_sqrt2 * oracle::build_state(reduce(es, c, t)), kRewriteTol)) ++bad;
      }
    }
  return bad;
}

int check_protocol(const HBState& sigma, int measured_color, const Coloring& coloring) {
  int bad = 0;
  const EdgeSet& target = sigma.target();
  const int n = target.n_vertices();
  const Mat rho = from_hbasis(sigma.normalized());
  const Mat rho_pair = oracle::kron(rho, rho);

  auto [res, branches] = subprotocol_recycle(sigma, measured_color, coloring);

  EdgeMask m_mask = 0;
  for (int v : coloring.vertices_of(measured_color)) m_mask |= EdgeMask{1} << (v - 1);
  const EdgeMask r_mask = (EdgeMask{(1u << n) - 1}) & ~m_mask;

  // Keep branch.
  {
    const oracle::DenseBranch db = oracle::subprotocol_dense(rho_pair, target, measured_color, coloring, {0, 0});
    const double p = res.p_pattern * res.p_keep;
    if (std::abs(db.probability - p) > kProtocolTol) ++bad;
    if (!db.impossible && ((db.rho / db.probability) - from_hbasis(res.kept)).cwiseAbs().maxCoeff() > kProtocolTol)
      ++bad;
  }

  // Every recycle branch, matched by measurement pattern.
  double total = res.p_pattern * res.p_keep;
  for (EdgeMask w = 1; w < (EdgeMask{1} << n); ++w) {  // sigma_x minus patterns (discarded)
    if (w & ~m_mask) continue;
    total += oracle::subprotocol_dense(rho_pair, target, measured_color, coloring, {0, w}).probability;
  }
  for (const RecycleBranch& br : branches) {
    if ((br.pperp_vertices & ~r_mask) || (br.minus_vertices & ~m_mask)) ++bad;
    const oracle::DenseBranch db =
        oracle::subprotocol_dense(rho_pair, target, measured_color, coloring, {br.pperp_vertices, br.minus_vertices});
    total += db.probability;
    if (std::abs(db.probability - br.probability) > kProtocolTol) ++bad;
    if (!db.impossible && ((db.rho / db.probability) - from_hbasis(br.state)).cwiseAbs().maxCoeff() > kProtocolTol)
      ++bad;
  }
  if (std::abs(total - 1.0) > 1e-10) ++bad;
  return bad;
}

}  // namespace hgp::checks
