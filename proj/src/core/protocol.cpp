// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#include "core/protocol.hpp"

#include <bit>
#include <stdexcept>

namespace hgp {

namespace {

using oracle::Complex;

inline int parity(std::uint32_t x) { return std::popcount(x) & 1; }

// Index machinery for one (target, coloring, measured color) combination:
// a basis index k splits into its measured-color part and the rest.
struct Split {
  int n = 0, n_m = 0, n_r = 0;
  std::vector<int> m_vertices, r_vertices;     // 1-based labels, ascending
  std::vector<std::uint32_t> full_m, full_r;   // suffix index -> k-index bits
  EdgeMask m_mask = 0, r_mask = 0;             // vertex masks

  EdgeMask r_suffix_to_vertex_mask(std::uint32_t suffix) const {
    EdgeMask out = 0;
    for (int j = 0; j < n_r; ++j)
      if ((suffix >> j) & 1) out |= EdgeMask{1} << (r_vertices[j] - 1);
    return out;
  }
  EdgeMask m_suffix_to_vertex_mask(std::uint32_t suffix) const {
    EdgeMask out = 0;
    for (int j = 0; j < n_m; ++j)
      if ((suffix >> j) & 1) out |= EdgeMask{1} << (m_vertices[j] - 1);
    return out;
  }
};

Split make_split(const HBState& sigma, int measured_color, const Coloring& coloring) {
  const EdgeSet& target = sigma.target();
  const int n = target.n_vertices();
  if (static_cast<int>(coloring.color.size()) != n || !is_colorable(target, coloring))
    throw std::invalid_argument("invalid coloring for the protocol target");
  Split s;
  s.n = n;
  s.m_vertices = coloring.vertices_of(measured_color);
  if (s.m_vertices.empty()) throw std::invalid_argument("measured color has no vertices");
  for (int v : s.m_vertices) s.m_mask |= EdgeMask{1} << (v - 1);
  s.r_mask = ((EdgeMask{1} << n) - 1) & ~s.m_mask;
  for (int v = 1; v <= n; ++v)
    if (s.r_mask & (EdgeMask{1} << (v - 1))) s.r_vertices.push_back(v);
  s.n_m = static_cast<int>(s.m_vertices.size());
  s.n_r = static_cast<int>(s.r_vertices.size());
  // The coefficient map needs every edge to hit the measured color exactly once.
  for (EdgeMask e : target.edges())
    if (std::popcount(e & s.m_mask) != 1)
      throw std::invalid_argument("protocol requires each edge to contain exactly one vertex of the measured color");
  auto scatter = [&](const std::vector<int>& verts) {
    std::vector<std::uint32_t> table(std::size_t{1} << verts.size(), 0);
    for (std::uint32_t i = 0; i < table.size(); ++i) {
      std::uint32_t bits = 0;
      for (std::size_t j = 0; j < verts.size(); ++j)
        if ((i >> j) & 1) bits |= std::uint32_t{1} << oracle::bit_of_vertex(s.n, verts[j]);
      table[i] = bits;
    }
    return table;
  };
  s.full_m = scatter(s.m_vertices);
  s.full_r = scatter(s.r_vertices);
  return s;
}

bool is_diagonal(const Mat& c) {
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j)
      if (i != j && std::norm(c(i, j)) > 1e-28) return false;
  return true;
}

// Keep-type branch with sigma_x outcome pattern w (w = 0 is the kept branch):
// out[(i,u),(i',u')] = 2^-|R| sum_{j,j'} C[(i,j),(i',j')] C[(i^w,j^u),(i'^w,j'^u')].
Mat keep_branch_matrix(const Mat& c, const Split& s, std::uint32_t w, bool diagonal) {
  const Eigen::Index dim = c.rows();
  const double scale = 1.0 / static_cast<double>(std::uint64_t{1} << s.n_r);
  const std::uint32_t dm = std::uint32_t{1} << s.n_m;
  const std::uint32_t dr = std::uint32_t{1} << s.n_r;
  Mat out = Mat::Zero(dim, dim);
  if (diagonal) {
    for (std::uint32_t i = 0; i < dm; ++i)
      for (std::uint32_t u = 0; u < dr; ++u) {
        Complex acc = 0;
        for (std::uint32_t j = 0; j < dr; ++j)
          acc += c(s.full_m[i] | s.full_r[j], s.full_m[i] | s.full_r[j]) *
                 c(s.full_m[i ^ w] | s.full_r[j ^ u], s.full_m[i ^ w] | s.full_r[j ^ u]);
        out(s.full_m[i] | s.full_r[u], s.full_m[i] | s.full_r[u]) = scale * acc;
      }
    return out;
  }
  for (std::uint32_t i = 0; i < dm; ++i)
    for (std::uint32_t i2 = 0; i2 < dm; ++i2)
      for (std::uint32_t u = 0; u < dr; ++u)
        for (std::uint32_t u2 = 0; u2 < dr; ++u2) {
          Complex acc = 0;
          for (std::uint32_t j = 0; j < dr; ++j)
            for (std::uint32_t j2 = 0; j2 < dr; ++j2)
              acc += c(s.full_m[i] | s.full_r[j], s.full_m[i2] | s.full_r[j2]) *
                     c(s.full_m[i ^ w] | s.full_r[j ^ u], s.full_m[i2 ^ w] | s.full_r[j2 ^ u2]);
          out(s.full_m[i] | s.full_r[u], s.full_m[i2] | s.full_r[u2]) = scale * acc;
        }
  return out;
}

double keep_branch_trace(const Mat& c, const Split& s, std::uint32_t w, bool diagonal) {
  const double scale = 1.0 / static_cast<double>(std::uint64_t{1} << s.n_r);
  const std::uint32_t dm = std::uint32_t{1} << s.n_m;
  const std::uint32_t dr = std::uint32_t{1} << s.n_r;
  Complex acc = 0;
  if (diagonal) {
    for (std::uint32_t i = 0; i < dm; ++i)
      for (std::uint32_t u = 0; u < dr; ++u)
        for (std::uint32_t j = 0; j < dr; ++j)
          acc += c(s.full_m[i] | s.full_r[j], s.full_m[i] | s.full_r[j]) *
                 c(s.full_m[i ^ w] | s.full_r[j ^ u], s.full_m[i ^ w] | s.full_r[j ^ u]);
  } else {
    for (std::uint32_t i = 0; i < dm; ++i)
      for (std::uint32_t u = 0; u < dr; ++u)
        for (std::uint32_t j = 0; j < dr; ++j)
          for (std::uint32_t j2 = 0; j2 < dr; ++j2)
            acc += c(s.full_m[i] | s.full_r[j], s.full_m[i] | s.full_r[j2]) *
                   c(s.full_m[i ^ w] | s.full_r[j ^ u], s.full_m[i ^ w] | s.full_r[j2 ^ u]);
  }
  return scale * acc.real();
}

// Recycle branch (t = P_perp rest-suffix mask, m = sigma_z "-1" suffix mask):
// the two-copy transition |H_a>|H_b> -> |H_{(b_M, a_R + b_R)}> with amplitude
// sign (-1)^(a_R.t + (a_M + b_M).m), corrections already applied.
Mat recycle_branch_matrix(const Mat& c, const Split& s, std::uint32_t t, std::uint32_t m, bool diagonal) {
  const Eigen::Index dim = c.rows();
  const double scale = 1.0 / static_cast<double>(std::uint64_t{1} << s.n);
  const std::uint32_t dm = std::uint32_t{1} << s.n_m;
  const std::uint32_t dr = std::uint32_t{1} << s.n_r;
  Mat out = Mat::Zero(dim, dim);
  if (diagonal) {
    for (std::uint32_t b = 0; b < dm; ++b)
      for (std::uint32_t u = 0; u < dr; ++u) {
        Complex acc = 0;
        for (std::uint32_t a = 0; a < dm; ++a)
          for (std::uint32_t j = 0; j < dr; ++j)
            acc += c(s.full_m[a] | s.full_r[j], s.full_m[a] | s.full_r[j]) *
                   c(s.full_m[b] | s.full_r[j ^ u], s.full_m[b] | s.full_r[j ^ u]);
        out(s.full_m[b] | s.full_r[u], s.full_m[b] | s.full_r[u]) = scale * acc;
      }
    return out;
  }
  for (std::uint32_t b = 0; b < dm; ++b)
    for (std::uint32_t b2 = 0; b2 < dm; ++b2)
      for (std::uint32_t u = 0; u < dr; ++u)
        for (std::uint32_t u2 = 0; u2 < dr; ++u2) {
          Complex acc = 0;
          for (std::uint32_t a = 0; a < dm; ++a)
            for (std::uint32_t a2 = 0; a2 < dm; ++a2) {
              const int sign_m = parity((a ^ b) & m) ^ parity((a2 ^ b2) & m);
              for (std::uint32_t j = 0; j < dr; ++j)
                for (std::uint32_t j2 = 0; j2 < dr; ++j2) {
                  const int sgn = sign_m ^ parity((j ^ j2) & t);
                  const Complex term = c(s.full_m[a] | s.full_r[j], s.full_m[a2] | s.full_r[j2]) *
                                       c(s.full_m[b] | s.full_r[j ^ u], s.full_m[b2] | s.full_r[j2 ^ u2]);
                  acc += sgn ? -term : term;
                }
            }
          out(s.full_m[b] | s.full_r[u], s.full_m[b2] | s.full_r[u2]) = scale * acc;
        }
  return out;
}

// Recycle corrections, per measured vertex: a "-1" outcome asks
// for Z on the P-partner of each incident edge with one P_perp vertex, and on
// both partners when the edge saw two P_perp outcomes.
std::vector<int> correction_vertices_for(const EdgeSet& target, const Split& s, EdgeMask pperp_vertices,
                                         EdgeMask minus_vertices) {
  EdgeMask corrections = 0;
  for (int v : s.m_vertices) {
    if (!((minus_vertices >> (v - 1)) & 1)) continue;
    const EdgeMask vbit = EdgeMask{1} << (v - 1);
    for (EdgeMask e : target.edges()) {
      if (!(e & vbit)) continue;
      const EdgeMask e_rest = e & s.r_mask;
      const EdgeMask hit = e_rest & pperp_vertices;
      if (!hit) continue;
      if (std::popcount(e_rest) > 2)
        throw std::invalid_argument("recycle corrections defined for edges of order 3 only");
      if (std::popcount(hit) == 1)
        corrections ^= e_rest & ~hit;
      else
        corrections ^= e_rest;
    }
  }
  return edge_vertices(corrections);
}

SubprotocolResult keep_result(const Mat& c, const HBState& sigma, const Split& s, bool diagonal) {
  SubprotocolResult res;
  const Mat kept = keep_branch_matrix(c, s, 0, diagonal);
  const double p_keep_abs = kept.trace().real();
  double p_pattern = p_keep_abs;
  for (std::uint32_t w = 1; w < (std::uint32_t{1} << s.n_m); ++w)
    p_pattern += keep_branch_trace(c, s, w, diagonal);
  res.p_pattern = p_pattern;
  res.p_reduce_each = std::pow(p_pattern, 1.0 / s.n_r);
  if (p_keep_abs < oracle::kImpossibleBranch)
    throw std::runtime_error("keep branch is impossible for this state");
  res.p_keep = p_keep_abs / p_pattern;
  res.p_minus = 1.0 - res.p_keep;
  res.kept = HBState(sigma.target(), kept / p_keep_abs);
  return res;
}

}  // namespace

SubprotocolResult subprotocol_keep(const HBState& sigma, int measured_color, const Coloring& coloring) {
  const Split s = make_split(sigma, measured_color, coloring);
  const Mat c = sigma.normalized().coeffs();
  return keep_result(c, sigma, s, is_diagonal(c));
}

std::pair<SubprotocolResult, std::vector<RecycleBranch>> subprotocol_recycle(const HBState& sigma,
                                                                             int measured_color,
                                                                             const Coloring& coloring) {
  const Split s = make_split(sigma, measured_color, coloring);
  const Mat c = sigma.normalized().coeffs();
  const bool diagonal = is_diagonal(c);
  SubprotocolResult keep = keep_result(c, sigma, s, diagonal);
  std::vector<RecycleBranch> branches;
  for (std::uint32_t t = 1; t < (std::uint32_t{1} << s.n_r); ++t) {
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << s.n_m); ++m) {
      RecycleBranch br;
      br.pperp_vertices = s.r_suffix_to_vertex_mask(t);
      br.minus_vertices = s.m_suffix_to_vertex_mask(m);
      br.z_outcome = m == 0 ? +1 : -1;
      br.correction_vertices = correction_vertices_for(sigma.target(), s, br.pperp_vertices, br.minus_vertices);
      Mat state = recycle_branch_matrix(c, s, t, m, diagonal);
      br.probability = state.trace().real();
      if (br.probability >= oracle::kImpossibleBranch)
        state /= br.probability;
      else
        state.setZero();
      br.state = HBState(sigma.target(), std::move(state));
      branches.push_back(std::move(br));
    }
  }
  return {std::move(keep), std::move(branches)};
}

double minus_one_probability(const HBState& sigma, int measured_color, const Coloring& coloring) {
  const Split s = make_split(sigma, measured_color, coloring);
  const Mat c = sigma.normalized().coeffs();
  const bool diagonal = is_diagonal(c);
  double p_pattern = 0;
  for (std::uint32_t w = 0; w < (std::uint32_t{1} << s.n_m); ++w)
    p_pattern += keep_branch_trace(c, s, w, diagonal);
  if (p_pattern < oracle::kImpossibleBranch) return 1.0;
  return 1.0 - keep_branch_trace(c, s, 0, diagonal) / p_pattern;
}

}  // namespace hgp
