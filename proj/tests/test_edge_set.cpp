// hgpurify - entanglement purification of hypergraph states
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "core/dense.hpp"
#include "core/edge_set.hpp"

using namespace hgp;

namespace {

bool same_state(const EdgeSet& a, const EdgeSet& b) {
  return (oracle::build_state(a) - oracle::build_state(b)).cwiseAbs().maxCoeff() < 1e-12;
}

}  // namespace

TEST_CASE("parse / to_text round trip") {
  for (const char* text : {"1;", "3; {1,2,3}", "3; {1},{1,2,3},{2,3}", "4; -{1,2,3},{2,3,4}", "2; -"}) {
    const EdgeSet es = EdgeSet::parse(text);
    CHECK(EdgeSet::parse(es.to_text()) == es);
  }
  CHECK(EdgeSet::parse("3; {3},{1,2,3}").to_text() == "3; {1,2,3},{3}");
  CHECK(EdgeSet::parse("2; -").sign() == -1);
  CHECK_THROWS_AS(EdgeSet::parse("3; {1,4}"), std::out_of_range);
  CHECK_THROWS_AS(EdgeSet::parse("nope"), std::invalid_argument);
}

TEST_CASE("edge mask helpers and canonical order") {
  CHECK(edge_from_vertices({1, 3}) == 0b101);
  CHECK(edge_vertices(0b110) == std::vector<int>{2, 3});
  CHECK(edge_lex_less(edge_from_vertices({1}), edge_from_vertices({1, 2})));
  CHECK(edge_lex_less(edge_from_vertices({1, 3}), edge_from_vertices({2})));
}

TEST_CASE("toggle is mod-2; empty edge flips the sign") {
  EdgeSet es = EdgeSet::parse("3; {1,2,3}");
  es.toggle(edge_from_vertices({1, 2, 3}));
  CHECK(es.edges().empty());
  es.toggle(0);
  CHECK(es.sign() == -1);
  es.toggle(0);
  CHECK(es.sign() == +1);
}

TEST_CASE("Pauli rewrites on the 3-vertex star") {
  const EdgeSet star = EdgeSet::parse("3; {1,2,3}");
  CHECK(apply_Z(star, 1) == EdgeSet::parse("3; {1},{1,2,3}"));
  CHECK(apply_Z(apply_Z(star, 2), 2) == star);
  // X_1 dresses the state with C_{A(1)}: the {2,3} edge appears.
  CHECK(apply_X(star, 1) == EdgeSet::parse("3; {1,2,3},{2,3}"));
  CHECK(apply_X(apply_X(star, 3), 3) == star);
}

TEST_CASE("rewrites agree with the dense simulator on fixed graphs") {
  for (const char* text : {"3; {1,2,3}", "3; {1,2},{2,3},{1,3}", "4; {1,2,3},{2,3,4},{1,4}", "4; -{1},{1,2,3,4}"}) {
    const EdgeSet es = EdgeSet::parse(text);
    const int n = es.n_vertices();
    for (int v = 1; v <= n; ++v) {
      oracle::Vec z = oracle::build_state(es);
      oracle::vec_apply_phase_edge(z, oracle::state_mask(n, EdgeMask{1} << (v - 1)));
      CHECK((z - oracle::build_state(apply_Z(es, v))).cwiseAbs().maxCoeff() < 1e-12);

      oracle::Vec x = oracle::build_state(es);
      oracle::vec_apply_x(x, oracle::bit_of_vertex(n, v));
      CHECK((x - oracle::build_state(apply_X(es, v))).cwiseAbs().maxCoeff() < 1e-12);
    }
    for (int c = 1; c <= n; ++c)
      for (int t = 1; t <= n; ++t) {
        if (c == t) continue;
        oracle::Vec psi = oracle::build_state(es);
        oracle::vec_apply_cnot(psi, oracle::bit_of_vertex(n, c), oracle::bit_of_vertex(n, t));
        CHECK((psi - oracle::build_state(apply_cnot(es, c, t))).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(same_state(apply_cnot(apply_cnot(es, c, t), c, t), es));
      }
  }
}

TEST_CASE("z_split halves rebuild the state and reduce merges vertices") {
  const EdgeSet star = EdgeSet::parse("3; {1,2,3}");
  auto [e0, e1] = z_split(star, 1);
  CHECK(e0 == EdgeSet::parse("2;"));
  CHECK(e1 == EdgeSet::parse("2; {1,2}"));
  CHECK(reduce(star, 1, 2) == EdgeSet::parse("2; {1,2}"));
  // Merging two vertices of the same edge truncates it.
  CHECK(reduce(EdgeSet::parse("3; {1,2},{1,3}"), 1, 2) == EdgeSet::parse("2; {1},{1,2}"));
}

TEST_CASE("adjacency") {
  const EdgeSet es = EdgeSet::parse("3; {1},{1,2},{1,2,3}");
  const std::vector<EdgeMask> a1 = adjacency(es, 1);
  REQUIRE(a1.size() == 3);
  CHECK(a1[0] == 0);  // {1} minus vertex 1: the empty edge
  CHECK(adjacency(es, 3) == std::vector<EdgeMask>{edge_from_vertices({1, 2})});
}

TEST_CASE("coloring parse, regularity, colorability") {
  const Coloring abca = Coloring::parse("ABCA");
  CHECK(abca.n_colors() == 3);
  CHECK(abca.to_text() == "ABCA");
  CHECK(abca.vertices_of(0) == std::vector<int>{1, 4});

  const EdgeSet chain4 = EdgeSet::parse("4; {1,2,3},{2,3,4}");
  CHECK(is_k_regular(chain4, 3));
  CHECK_FALSE(is_k_regular(EdgeSet::parse("3; {1,2}"), 3));
  CHECK(is_colorable(chain4, abca));
  CHECK_FALSE(is_colorable(chain4, Coloring::parse("ABCB")));
}
