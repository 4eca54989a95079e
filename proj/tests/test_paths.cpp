#include <catch2/catch_amalgamated.hpp>

#include "gilat/paths.hpp"

#include "fixtures.hpp"

using namespace gilat;
using fixtures::vs;

namespace {

Path path_of(const KGraph& g, std::initializer_list<const char*> ids) {
  std::vector<int> word;
  for (const char* id : ids) word.push_back(*g.find_edge(id));
  return normalize(g, word);
}

}  // namespace

TEST_CASE("normalize applies the square rewrite") {
  KGraph g = fixtures::fx3();
  // g.a rewrites to b.g
  Path p = path_of(g, {"g", "a"});
  CHECK(p == path_of(g, {"b", "g"}));
  CHECK(g.edge(p.edges[0]).id == "b");
  CHECK(g.edge(p.edges[1]).id == "g");
}

TEST_CASE("normalize on fx1 swaps loops into color order") {
  KGraph g = fixtures::fx1(2);
  Path p = path_of(g, {"l2", "l1"});
  CHECK(g.edge(p.edges[0]).id == "l1");
  CHECK(g.edge(p.edges[1]).id == "l2");
}

TEST_CASE("normalize is idempotent and preserves range, source, degree") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 400; ++trial) {
    KGraph g = trial % 2 ? corpus::random_2graph(rng) : fixtures::fx3();
    std::vector<int> word = fixtures::random_word(g, rng);
    if (word.empty()) continue;
    Path p = normalize(g, word);
    CHECK(normalize(g, p.range, p.edges) == p);
    CHECK(p.range == g.edge(word.front()).range);
    CHECK(p.source(g) == g.edge(word.back()).source);
    Degree d(g.rank());
    for (int e : word) d[g.edge(e).color]++;
    CHECK(p.degree(g) == d);
    // already-sorted words come back unchanged
    std::vector<int> sorted = p.edges;
    CHECK(normalize(g, p.range, sorted).edges == sorted);
  }
}

TEST_CASE("normalization is confluent: random rewrite orders agree") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    KGraph g = corpus::random_2graph(rng);
    std::vector<int> word = fixtures::random_word(g, rng);
    if (word.empty()) continue;
    Path expected = normalize(g, word);
    for (int rep = 0; rep < 3; ++rep)
      CHECK(fixtures::normalize_random_order(g, word, rng) == expected);
  }
}

TEST_CASE("compose concatenates and errors on mismatch") {
  KGraph g = fixtures::fx3();
  Path b = path_of(g, {"b"});
  Path gg = path_of(g, {"g"});
  Path bg = compose(g, b, gg);
  CHECK(bg == path_of(g, {"b", "g"}));
  Degree d = bg.degree(g);
  CHECK(d[0] == 1);
  CHECK(d[1] == 1);
  Path a = path_of(g, {"a"});
  CHECK_THROWS_AS(compose(g, b, a), InputError);  // s(b)=u, r(a)=w
  // vertex paths are identities
  CHECK(compose(g, vertex_path(0), b) == b);
  CHECK(compose(g, b, vertex_path(0)) == b);
}

TEST_CASE("segment extracts the unique middle factor") {
  KGraph g = fixtures::fx3();
  Path bg = path_of(g, {"b", "g"});
  Degree zero = Degree::zero(2);
  Degree e2 = Degree::unit(2, 1);
  Degree full = bg.degree(g);
  // bg = g.a, so the (0,1)-prefix is g
  CHECK(segment(g, bg, zero, e2) == path_of(g, {"g"}));
  CHECK(segment(g, bg, zero, full) == bg);
  CHECK(segment(g, bg, zero, zero) == vertex_path(0));
  CHECK(segment(g, bg, full, full) == vertex_path(bg.source(g)));
  CHECK_THROWS_AS(segment(g, bg, full, zero), InputError);
}

TEST_CASE("prefix splits recompose to the original path") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    KGraph g = corpus::random_2graph(rng);
    std::vector<int> word = fixtures::random_word(g, rng);
    if (word.empty()) continue;
    Path p = normalize(g, word);
    Degree d = p.degree(g);
    // all split degrees m <= d
    Degree m(g.rank());
    for (m[0] = 0; m[0] <= d[0]; ++m[0])
      for (m[1] = 0; m[1] <= d[1]; ++m[1]) {
        Path head = segment(g, p, Degree::zero(g.rank()), m);
        Path tail = segment(g, p, m, d);
        CHECK(compose(g, head, tail) == p);
      }
  }
}

TEST_CASE("paths_from enumerates exactly the degree-n paths") {
  KGraph g2 = fixtures::fx2();
  auto p1 = paths_from(g2, 0, Degree::unit(1, 0));
  REQUIRE(p1.size() == 1);
  CHECK(g2.edge(p1[0].edges[0]).id == "e");
  CHECK(paths_from(g2, 1, Degree::unit(1, 0)).empty());

  KGraph g3 = fixtures::fx3();
  Degree d(2);
  d[1] = 2;
  auto p2 = paths_from(g3, 0, d);  // g then h
  REQUIRE(p2.size() == 1);
  CHECK(p2[0] == Path{0, {*g3.find_edge("g"), *g3.find_edge("h")}});
}

TEST_CASE("source_set iterates the transfer maps") {
  KGraph g = fixtures::fx3();
  CHECK(source_set_steps(g, vs({0}), Degree::unit(2, 1)) == vs({1}));
  Degree d(2);
  d[1] = 2;
  CHECK(source_set_steps(g, vs({0}), d) == vs({1}));
  CHECK(source_set_steps(g, vs({0}), Degree::zero(2)) == vs({0}));
}

TEST_CASE("source_set is a semigroup action") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    KGraph g = corpus::random_2graph(rng);
    VertexSet s;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (corpus::pick(rng, 0, 1)) s.add(v);
    Degree n(g.rank()), m(g.rank());
    for (int c = 0; c < g.rank(); ++c) {
      n[c] = corpus::pick(rng, 0, 2);
      m[c] = corpus::pick(rng, 0, 2);
    }
    CHECK(source_set_steps(g, s, n + m) == source_set_steps(g, source_set_steps(g, s, n), m));
  }
}

TEST_CASE("mce and lambda_min on fx3") {
  KGraph g = fixtures::fx3();
  Path b = path_of(g, {"b"});
  Path gp = path_of(g, {"g"});
  auto common = mce(g, b, gp);
  REQUIRE(common.size() == 1);
  CHECK(common[0] == path_of(g, {"b", "g"}));
  auto min = lambda_min(g, b, gp);
  REQUIRE(min.size() == 1);
  CHECK(min[0].first == gp);
  CHECK(min[0].second == path_of(g, {"a"}));
}

TEST_CASE("mce trivial cases") {
  KGraph g = fixtures::fx3();
  Path b = path_of(g, {"b"});
  Path a = path_of(g, {"a"});
  CHECK(mce(g, b, a).empty());  // different ranges
  auto same = mce(g, b, b);
  REQUIRE(same.size() == 1);
  CHECK(same[0] == b);
  auto min = lambda_min(g, b, b);
  REQUIRE(min.size() == 1);
  CHECK(min[0].first == vertex_path(b.source(g)));
  CHECK(min[0].second == vertex_path(b.source(g)));
}

TEST_CASE("mce is symmetric and matches lambda_min in size") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    KGraph g = corpus::random_2graph(rng);
    std::vector<int> wa = fixtures::random_word(g, rng, 3);
    std::vector<int> wb = fixtures::random_word(g, rng, 3);
    Path mu = wa.empty() ? vertex_path(0) : normalize(g, wa);
    Path nu = wb.empty() ? vertex_path(0) : normalize(g, wb);
    auto ab = mce(g, mu, nu);
    auto ba = mce(g, nu, mu);
    std::sort(ab.begin(), ab.end());
    std::sort(ba.begin(), ba.end());
    CHECK(ab == ba);
    CHECK(lambda_min(g, mu, nu).size() == ab.size());
  }
}

TEST_CASE("path enumeration respects the degree cap") {
  KGraph g = fixtures::fx1(1);
  Degree d(1);
  d[0] = 30;
  CHECK_THROWS_AS(paths_from(g, 0, d), ResourceError);
}
