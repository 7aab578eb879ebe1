// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#include "core/edge_set.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace hgp {

EdgeMask edge_from_vertices(const std::vector<int>& vertices) {
  EdgeMask e = 0;
  for (int v : vertices) {
    if (v < 1 || v > kMaxVertices) throw std::out_of_range("vertex out of range");
    e |= EdgeMask{1} << (v - 1);
  }
  return e;
}

std::vector<int> edge_vertices(EdgeMask e) {
  std::vector<int> out;
  for (int v = 1; v <= kMaxVertices; ++v)
    if (e & (EdgeMask{1} << (v - 1))) out.push_back(v);
  return out;
}

bool edge_lex_less(EdgeMask a, EdgeMask b) {
  if (a == b) return false;
  while (a && b) {
    const int va = std::countr_zero(a);
    const int vb = std::countr_zero(b);
    if (va != vb) return va < vb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0;  // shorter prefix first; empty edge sorts before everything
}

EdgeSet::EdgeSet(int n_vertices, std::vector<EdgeMask> edges, int sign)
    : n_(n_vertices), sign_(sign) {
  if (n_ < 0 || n_ > kMaxVertices) throw std::out_of_range("vertex count out of range");
  if (sign_ != 1 && sign_ != -1) throw std::invalid_argument("sign must be +1 or -1");
  const EdgeMask all = n_ >= 32 ? ~EdgeMask{0} : (EdgeMask{1} << n_) - 1;
  for (EdgeMask e : edges) {
    if ((e & ~all) != 0) throw std::out_of_range("edge exceeds vertex set");
    toggle(e);  // mod-2 semantics also for the constructor argument
  }
}

bool EdgeSet::contains(EdgeMask e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e, edge_lex_less);
}

void EdgeSet::toggle(EdgeMask e) {
  if (e == 0) {
    sign_ = -sign_;
    return;
  }
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e, edge_lex_less);
  if (it != edges_.end() && *it == e)
    edges_.erase(it);
  else
    edges_.insert(it, e);
}

void EdgeSet::check_vertex(int v) const {
  if (v < 1 || v > n_) throw std::out_of_range("vertex out of range");
}

std::string EdgeSet::to_text() const {
  std::ostringstream os;
  os << n_ << ";";
  if (sign_ < 0) os << " -";
  bool first = true;
  for (EdgeMask e : edges_) {
    os << (first ? " " : ",") << '{';
    bool fv = true;
    for (int v : edge_vertices(e)) {
      if (!fv) os << ',';
      os << v;
      fv = false;
    }
    os << '}';
    first = false;
  }
  return os.str();
}

EdgeSet EdgeSet::parse(const std::string& text) {
  auto fail = [&](const char* why) {
    throw std::invalid_argument(std::string("bad hypergraph text: ") + why);
  };
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  std::size_t start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == start) fail("missing vertex count");
  const int n = std::stoi(text.substr(start, i - start));
  skip_ws();
  if (i >= text.size() || text[i] != ';') fail("expected ';'");
  ++i;
  skip_ws();
  int sign = +1;
  if (i < text.size() && text[i] == '-') {
    sign = -1;
    ++i;
    skip_ws();
  }
  std::vector<EdgeMask> edges;
  while (i < text.size()) {
    if (text[i] != '{') fail("expected '{'");
    ++i;
    std::vector<int> verts;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == '}') break;
      start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start) fail("expected vertex number");
      verts.push_back(std::stoi(text.substr(start, i - start)));
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;
    }
    if (i >= text.size()) fail("unterminated edge");
    ++i;  // '}'
    if (verts.empty()) fail("empty edge not allowed");
    edges.push_back(edge_from_vertices(verts));
    skip_ws();
    if (i < text.size()) {
      if (text[i] != ',') fail("expected ',' between edges");
      ++i;
      skip_ws();
    }
  }
  return EdgeSet(n, std::move(edges), sign);
}

std::vector<EdgeMask> adjacency(const EdgeSet& es, int v) {
  es.check_vertex(v);
  const EdgeMask vbit = EdgeMask{1} << (v - 1);
  std::vector<EdgeMask> out;
  for (EdgeMask e : es.edges())
    if (e & vbit) out.push_back(e & ~vbit);
  return out;
}

EdgeSet apply_Z(const EdgeSet& es, int v) {
  es.check_vertex(v);
  EdgeSet out = es;
  out.toggle(EdgeMask{1} << (v - 1));
  return out;
}

EdgeSet apply_X(const EdgeSet& es, int v) {
  EdgeSet out = es;
  for (EdgeMask a : adjacency(es, v)) out.toggle(a);
  return out;
}

EdgeSet apply_cnot(const EdgeSet& es, int c, int t) {
  es.check_vertex(c);
  es.check_vertex(t);
  if (c == t) throw std::invalid_argument("cnot control equals target");
  const EdgeMask cbit = EdgeMask{1} << (c - 1);
  EdgeSet out = es;
  for (EdgeMask a : adjacency(es, t)) out.toggle(a | cbit);
  return out;
}

namespace {

// Removes vertex `gone` from the label set; higher labels shift down by one.
EdgeMask relabel_without(EdgeMask e, int gone) {
  const EdgeMask low = (EdgeMask{1} << (gone - 1)) - 1;
  return (e & low) | ((e >> 1) & ~low);
}

}  // namespace

EdgeSet reduce(const EdgeSet& es, int v1, int v2) {
  es.check_vertex(v1);
  es.check_vertex(v2);
  if (v1 == v2) throw std::invalid_argument("reduce needs two distinct vertices");
  const EdgeMask v1bit = EdgeMask{1} << (v1 - 1);
  const EdgeMask v2bit = EdgeMask{1} << (v2 - 1);
  EdgeSet merged(es.n_vertices(), {}, es.sign());
  for (EdgeMask e : es.edges())
    if (!(e & v1bit)) merged.toggle(e);
  for (EdgeMask f : adjacency(es, v1)) merged.toggle(f | v2bit);
  std::vector<EdgeMask> relabeled;
  for (EdgeMask e : merged.edges()) relabeled.push_back(relabel_without(e, v1));
  return EdgeSet(es.n_vertices() - 1, std::move(relabeled), merged.sign());
}

std::pair<EdgeSet, EdgeSet> z_split(const EdgeSet& es, int v) {
  es.check_vertex(v);
  const EdgeMask vbit = EdgeMask{1} << (v - 1);
  EdgeSet e0(es.n_vertices(), {}, es.sign());
  for (EdgeMask e : es.edges())
    if (!(e & vbit)) e0.toggle(e);
  EdgeSet e1 = e0;
  for (EdgeMask a : adjacency(es, v)) e1.toggle(a);  // empty adjacency entry flips sign
  std::vector<EdgeMask> r0, r1;
  for (EdgeMask e : e0.edges()) r0.push_back(relabel_without(e, v));
  for (EdgeMask e : e1.edges()) r1.push_back(relabel_without(e, v));
  return {EdgeSet(es.n_vertices() - 1, std::move(r0), e0.sign()),
          EdgeSet(es.n_vertices() - 1, std::move(r1), e1.sign())};
}

bool is_k_regular(const EdgeSet& es, int k) {
  for (EdgeMask e : es.edges())
    if (std::popcount(e) != k) return false;
  return true;
}

Coloring Coloring::parse(const std::string& text) {
  Coloring c;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (up < 'A' || up > 'Z') throw std::invalid_argument("bad coloring character");
    c.color.push_back(up - 'A');
  }
  return c;
}

std::string Coloring::to_text() const {
  std::string s;
  for (int c : color) s.push_back(static_cast<char>('A' + c));
  return s;
}

int Coloring::n_colors() const {
  int k = 0;
  for (int c : color) k = std::max(k, c + 1);
  return k;
}

std::vector<int> Coloring::vertices_of(int c) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < color.size(); ++i)
    if (color[i] == c) out.push_back(static_cast<int>(i) + 1);
  return out;
}

bool is_colorable(const EdgeSet& es, const Coloring& coloring) {
  if (static_cast<int>(coloring.color.size()) != es.n_vertices()) return false;
  for (EdgeMask e : es.edges()) {
    const auto verts = edge_vertices(e);
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j)
        if (coloring.color[verts[i] - 1] == coloring.color[verts[j] - 1]) return false;
  }
  return true;
}

}  // namespace hgp
