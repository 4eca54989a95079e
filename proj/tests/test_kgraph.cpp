#include <catch2/catch_amalgamated.hpp>

#include "gilat/kgraph.hpp"
#include "gilat/predicates.hpp"

#include "fixtures.hpp"

using namespace gilat;
using fixtures::vs;

TEST_CASE("fx1 and fx3 pass validation") {
  CHECK(fixtures::fx1(1).validate().ok());
  CHECK(fixtures::fx1(2).validate().ok());
  CHECK(fixtures::fx1(3).validate().ok());
  CHECK(fixtures::fx2().validate().ok());
  CHECK(fixtures::fx3().validate().ok());
}

TEST_CASE("a deleted square is reported with the unmatched pair") {
  // fx3 without the square a.h = h.a
  std::vector<Edge> edges{{"b", 0, 0, 0}, {"a", 0, 1, 1}, {"g", 1, 0, 1}, {"h", 1, 1, 1}};
  std::vector<Square> squares{{0, 2, 2, 1}};
  KGraph g(2, {"u", "w"}, std::move(edges), std::move(squares));
  ValidationReport rep = g.validate();
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const Violation& v : rep.violations) {
    if (v.kind == Violation::Kind::UnmatchedLeftPair && v.witness == std::vector<std::string>{"a", "h"})
      found = true;
  }
  CHECK(found);
}

TEST_CASE("duplicate square side is reported") {
  std::vector<Edge> edges{{"l1", 0, 0, 0}, {"l2", 1, 0, 0}};
  std::vector<Square> squares{{0, 1, 1, 0}, {0, 1, 1, 0}};
  KGraph g(2, {"v"}, std::move(edges), std::move(squares));
  ValidationReport rep = g.validate();
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().kind == Violation::Kind::DuplicateLeftPair);
}

TEST_CASE("cube condition catches non-commuting passes") {
  // Single vertex; three color-1 loops, one loop each in colors 2 and 3.
  // Passing b permutes the a-index by pi, passing c by rho. The cube holds
  // exactly when pi and rho commute.
  std::vector<Edge> edges{
      {"a0", 0, 0, 0}, {"a1", 0, 0, 0}, {"a2", 0, 0, 0}, {"b", 1, 0, 0}, {"c", 2, 0, 0}};
  auto mk = [&](std::array<int, 3> pi, std::array<int, 3> rho) {
    std::vector<Square> squares;
    for (int i = 0; i < 3; ++i) squares.push_back({i, 3, 3, pi[i]});
    for (int i = 0; i < 3; ++i) squares.push_back({i, 4, 4, rho[i]});
    squares.push_back({3, 4, 4, 3});
    return KGraph(3, {"v"}, edges, std::move(squares));
  };
  KGraph straight = mk({1, 0, 2}, {1, 0, 2});  // pi = rho, they commute
  CHECK(straight.validate().ok());
  KGraph twisted = mk({1, 0, 2}, {0, 2, 1});  // (01) and (12) do not commute
  ValidationReport rep = twisted.validate();
  bool cube_failed = false;
  for (const Violation& v : rep.violations)
    if (v.kind == Violation::Kind::CubeFailure) cube_failed = true;
  CHECK(cube_failed);
}

TEST_CASE("unresolved ids are input errors, not report entries") {
  CHECK_THROWS_AS(KGraph(2, {"v"}, {{"e", 5, 0, 0}}, {}), InputError);
  CHECK_THROWS_AS(KGraph(1, {"v"}, {{"e", 0, 2, 0}}, {}), InputError);
}

TEST_CASE("hereditary sets and closure") {
  KGraph g = fixtures::fx2();
  CHECK(is_hereditary(g, vs({})));
  CHECK(is_hereditary(g, vs({1})));
  CHECK_FALSE(is_hereditary(g, vs({0})));
  CHECK(hereditary_closure(g, vs({0})) == vs({0, 1}));
  auto sets = hereditary_sets(g);
  REQUIRE(sets.size() == 3);
  CHECK(sets[0] == vs({}));
  CHECK(sets[1] == vs({1}));
  CHECK(sets[2] == vs({0, 1}));
}

TEST_CASE("quotient off a hereditary set") {
  KGraph g = fixtures::fx2();
  KGraph q = quotient_graph(g, vs({1}));
  CHECK(q.vertex_count() == 1);
  CHECK(q.edge_count() == 0);
  CHECK(q.vertex_name(0) == "u");
  CHECK(q.validate().ok());

  KGraph same = quotient_graph(g, vs({}));
  CHECK(same.vertex_count() == 2);
  CHECK(same.edge_count() == 1);

  CHECK_THROWS_AS(quotient_graph(g, vs({0})), InputError);
}

TEST_CASE("subgraph keeps edges with range inside") {
  KGraph g = fixtures::fx3();
  KGraph s = subgraph(g, vs({1}));  // w is hereditary
  CHECK(s.vertex_count() == 1);
  // a and h are retained, g has range u outside H
  CHECK(s.edge_count() == 2);
  CHECK(s.find_edge("a").has_value());
  CHECK(s.find_edge("h").has_value());
  CHECK_FALSE(s.find_edge("g").has_value());
  CHECK(s.validate().ok());
}

TEST_CASE("saturation on fx2") {
  KGraph g = fixtures::fx2();
  CHECK_FALSE(is_saturated(g, vs({1})));
  CHECK(saturation(g, vs({1})) == vs({0, 1}));
  CHECK(is_saturated(g, VertexSet::full(2)));
  CHECK(is_saturated(g, vs({})));
}

TEST_CASE("saturation is extensive, monotone, idempotent on locally convex graphs") {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    KGraph g = trial % 2 ? corpus::random_2graph(rng) : corpus::random_1graph(rng);
    if (!is_locally_convex(g)) continue;
    auto hsets = hereditary_sets(g);
    for (VertexSet h : hsets) {
      VertexSet s = saturation(g, h);
      CHECK(h.subset_of(s));
      CHECK(saturation(g, s) == s);
      CHECK(is_hereditary(g, s));  // hereditary is preserved here
      ++checked;
    }
    for (size_t i = 0; i < hsets.size(); ++i)
      for (size_t j = 0; j < hsets.size(); ++j)
        if (hsets[i].subset_of(hsets[j]))
          CHECK(saturation(g, hsets[i]).subset_of(saturation(g, hsets[j])));
  }
  CHECK(checked > 50);
}

TEST_CASE("sourceless and locally convex classification") {
  CHECK(is_sourceless(fixtures::fx1(2)));
  CHECK(is_locally_convex(fixtures::fx1(2)));
  CHECK_FALSE(is_sourceless(fixtures::fx2()));
  CHECK(is_locally_convex(fixtures::fx2()));  // rank one is vacuously convex
  CHECK(is_locally_convex(fixtures::fx3()));
  // u emits both colors but the color-1 edge ends at a color-2 source
  KGraph nonconvex(2, {"u", "x", "w"}, {{"e", 0, 0, 1}, {"h", 1, 0, 2}}, {});
  REQUIRE(nonconvex.validate().ok());
  CHECK_FALSE(is_locally_convex(nonconvex));
}

TEST_CASE("quotient of a locally convex graph by a hereditary saturated set stays locally convex") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    KGraph g = corpus::random_2graph(rng);
    if (!is_locally_convex(g)) continue;
    for (VertexSet h : hereditary_sets(g)) {
      if (!is_saturated(g, h)) continue;
      CHECK(is_locally_convex(quotient_graph(g, h)));
      ++checked;
    }
  }
  CHECK(checked > 30);
}
