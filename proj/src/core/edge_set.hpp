// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#ifndef HGP_CORE_EDGE_SET_HPP
#define HGP_CORE_EDGE_SET_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hgp {

// A hyperedge as a vertex bitmask: bit (v-1) is set iff vertex v is in the edge.
using EdgeMask = std::uint32_t;

constexpr int kMaxVertices = 12;

EdgeMask edge_from_vertices(const std::vector<int>& vertices);
std::vector<int> edge_vertices(EdgeMask e);

// Lexicographic order on the ascending vertex lists: {1} < {1,2} < {1,3} < {2}.
bool edge_lex_less(EdgeMask a, EdgeMask b);

/// A hypergraph on vertices {1..n}: a canonical set of hyperedges plus a
/// global sign. The empty edge is never stored; toggling it flips the sign
/// (C_empty acts as the scalar -1).
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int n_vertices, std::vector<EdgeMask> edges = {}, int sign = +1);

  // Text format: "3; {1,2,3},{3}". A single "-" token after "n;" marks sign -1.
  static EdgeSet parse(const std::string& text);
  std::string to_text() const;

  int n_vertices() const { return n_; }
  int sign() const { return sign_; }
  const std::vector<EdgeMask>& edges() const { return edges_; }

  bool contains(EdgeMask e) const;
  // Mod-2 insert/remove. Toggling the empty edge flips the sign.
  void toggle(EdgeMask e);
  void flip_sign() { sign_ = -sign_; }

  void check_vertex(int v) const;

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) = default;

 private:
  int n_ = 0;
  std::vector<EdgeMask> edges_;  // sorted by edge_lex_less, no duplicates
  int sign_ = +1;
};

// A(v): edges containing v, with v removed. May contain the empty edge (mask 0).
std::vector<EdgeMask> adjacency(const EdgeSet& es, int v);

EdgeSet apply_Z(const EdgeSet& es, int v);
EdgeSet apply_X(const EdgeSet& es, int v);
EdgeSet apply_cnot(const EdgeSet& es, int c, int t);

// Merges v1 into v2 (P_{v1,v2}); v1 is removed and higher labels shift down.
EdgeSet reduce(const EdgeSet& es, int v1, int v2);

// sigma_z expansion at v: returns (E0, E1) on n-1 vertices.
std::pair<EdgeSet, EdgeSet> z_split(const EdgeSet& es, int v);

bool is_k_regular(const EdgeSet& es, int k);

/// Vertex -> color assignment, colors 0-based ('A' == 0).
struct Coloring {
  std::vector<int> color;

  static Coloring parse(const std::string& text);  // e.g. "ABCA"
  std::string to_text() const;
  int n_colors() const;
  std::vector<int> vertices_of(int c) const;  // 1-based vertex labels, ascending
};

// True iff no edge contains two vertices of the same color.
bool is_colorable(const EdgeSet& es, const Coloring& coloring);

}  // namespace hgp

#endif
