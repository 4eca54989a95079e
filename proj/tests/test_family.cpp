#include <catch2/catch_amalgamated.hpp>

#include "gilat/family.hpp"
#include "gilat/predicates.hpp"

#include "fixtures.hpp"

using namespace gilat;
using fixtures::vs;

TEST_CASE("tracing and source sets on the fixtures") {
  KGraph g1 = fixtures::fx1(2);
  CHECK(f_sources(g1, 0b01) == VertexSet{});
  CHECK(f_tracing(g1, 0b01) == vs({0}));
  CHECK(f_tracing(g1, 0b11) == vs({0}));

  KGraph g2 = fixtures::fx2();
  CHECK(f_sources(g2, 0b1) == vs({1}));
  // u is not a source and only reaches itself along no-color paths, so it
  // is tracing; w is a source.
  CHECK(f_tracing(g2, 0b1) == vs({0}));

  KGraph g3 = fixtures::fx3();
  CHECK(f_tracing(g3, 0b10) == vs({0, 1}));
  CHECK(f_tracing(g3, 0b01) == vs({0, 1}));
  CHECK_THROWS_AS(f_tracing(g3, 0), InputError);
  CHECK_THROWS_AS(f_sources(g3, 0), InputError);
}

TEST_CASE("tracing sets are hereditary along the complementary colors") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 80; ++trial) {
    KGraph g = corpus::random_2graph(rng);
    FMask all = 0b11;
    for (FMask f = 1; f <= all; ++f) {
      VertexSet tr = f_tracing(g, f);
      for (int c = 0; c < g.rank(); ++c) {
        if (f & (FMask{1} << c)) continue;
        CHECK(g.step(c, tr).subset_of(tr));
      }
    }
  }
}

TEST_CASE("covariance vertex sets on fx2") {
  KGraph g = fixtures::fx2();
  CHECK(jf_vertices(g, 0b1, vs({})) == vs({0}));
  CHECK(jf_vertices(g, 0b1, vs({1})) == vs({1}));
  CHECK(jf_vertices(g, 0b1, VertexSet::full(2)) == VertexSet::full(2));
  CHECK_THROWS_AS(jf_vertices(g, 0b1, vs({0})), InputError);  // not hereditary
}

TEST_CASE("hereditary family detection with least witness") {
  KGraph g2 = fixtures::fx2();
  TupleFamily h = fixtures::fam1(vs({0}), VertexSet{});
  FamilyWitness w;
  CHECK_FALSE(is_hereditary_family(g2, h, &w));
  CHECK(w.f == 0);
  CHECK(w.color == 0);
  CHECK(w.vertex == 1);

  CHECK(is_hereditary_family(g2, TupleFamily::all_full(1, 2)));

  KGraph g3 = fixtures::fx3();
  TupleFamily k = fixtures::fam2(VertexSet{}, vs({1}), VertexSet{}, VertexSet{});
  CHECK(is_hereditary_family(g3, k));
}

TEST_CASE("partial order detection") {
  TupleFamily constant = TupleFamily::constant(2, vs({0}));
  CHECK(is_partially_ordered(constant));

  TupleFamily bad = fixtures::fam2(VertexSet{}, vs({0}), VertexSet{}, VertexSet{});
  FamilyWitness w;
  CHECK_FALSE(is_partially_ordered(bad, &w));
  CHECK(w.f == 0b01);
  CHECK(w.vertex == 0);

  // family of the antichain {{1}}: components containing color 1
  TupleFamily antichain = fixtures::fam2(VertexSet{}, vs({0}), VertexSet{}, vs({0}));
  CHECK(is_partially_ordered(antichain));
}

TEST_CASE("closures on the fixtures") {
  KGraph g2 = fixtures::fx2();
  TupleFamily h = fixtures::fam1(vs({0}), VertexSet{});
  TupleFamily inv = inv_closure(g2, h);
  CHECK(inv[0] == vs({0, 1}));

  TupleFamily already = fixtures::fam1(vs({1}), vs({1}));
  CHECK(inv_closure(g2, already) == already);

  TupleFamily po = fixtures::fam2(VertexSet{}, vs({0}), VertexSet{}, VertexSet{});
  TupleFamily closed = po_closure(po);
  CHECK(closed[0b11] == vs({0}));
  CHECK(closed[0b10] == VertexSet{});
}

TEST_CASE("closures are extensive, monotone, idempotent") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 120; ++trial) {
    KGraph g = corpus::random_2graph(rng);
    TupleFamily a = corpus::random_family(rng, g);
    TupleFamily b = corpus::random_family(rng, g);
    FMask all = 0b11;
    // make b contain a for monotonicity
    for (FMask f = 0; f <= all; ++f) b[f] = b[f] | a[f];

    TupleFamily ia = inv_closure(g, a);
    CHECK(a.subset_of(ia));
    CHECK(inv_closure(g, ia) == ia);
    CHECK(ia.subset_of(inv_closure(g, b)));

    TupleFamily pa = po_closure(a);
    CHECK(a.subset_of(pa));
    CHECK(po_closure(pa) == pa);
    CHECK(pa.subset_of(po_closure(b)));
    CHECK(is_partially_ordered(pa));
  }
}

TEST_CASE("po closure preserves hereditary families") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 120; ++trial) {
    KGraph g = corpus::random_2graph(rng);
    TupleFamily a = inv_closure(g, corpus::random_family(rng, g));
    REQUIRE(is_hereditary_family(g, a));
    CHECK(is_hereditary_family(g, po_closure(a)));
  }
}
