#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "gilat/dynsys.hpp"
#include "gilat/oracle.hpp"

#include "fixtures.hpp"

using namespace gilat;
using fixtures::vs;

namespace {

DynSys collapse2() {
  // sigma(1) = 1, sigma(2) = 1 on two points
  return make_dynsys(1, {"1", "2"}, {{0, 0}});
}

}  // namespace

TEST_CASE("validation accepts commuting and rejects mismatched partials") {
  CHECK(validate_dynsys(collapse2()).ok());
  CHECK(validate_dynsys(make_dynsys(2, {"1", "2"}, {{0, 1}, {0, 1}})).ok());
  // swap vs partial identity: composites disagree at point 1
  DynSys bad = make_dynsys(2, {"1", "2"}, {{1, 0}, {0, -1}});
  DynValidationReport rep = validate_dynsys(bad);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().point == 0);
}

TEST_CASE("transfer by preimages") {
  TransferSystem t = dyn_transfer(collapse2());
  CHECK(t.apply(0, vs({0})) == vs({0, 1}));
  CHECK(t.apply(0, vs({1})) == VertexSet{});
  // total injective map: preimages are singletons or empty
  DynSys shift = make_dynsys(1, {"1", "2"}, {{-1, 0}});
  TransferSystem ts = dyn_transfer(shift);
  CHECK(ts.apply(0, vs({0})) == vs({1}));
  CHECK(ts.apply(0, vs({1})) == VertexSet{});
  CHECK(ts.apply(0, VertexSet::full(2)).subset_of(VertexSet::full(2)));
}

TEST_CASE("rank-one NT families of the collapsing map") {
  DynSys d = collapse2();
  CHECK(dyn_is_nt_tuple(d, fixtures::fam1(VertexSet{}, VertexSet{})));
  CHECK(dyn_is_nt_tuple(d, TupleFamily::all_full(1, 2)));
  // bottom {2} is preimage-closed and the pair ({2},{2}) passes
  CHECK(dyn_is_nt_tuple(d, fixtures::fam1(vs({1}), vs({1}))));
  // (empty, {1}) is a T-pair: 1 has preimages {1,2}, not all inside empty
  CHECK(dyn_is_nt_tuple(d, fixtures::fam1(VertexSet{}, vs({0}))));
  // (empty, {2}) fails: 2 has no preimages, so it must fall into the bottom
  NtDiagnostics diag;
  CHECK_FALSE(dyn_is_nt_tuple(d, fixtures::fam1(VertexSet{}, vs({1})), &diag));
  CHECK(diag.condition == 1);
}

TEST_CASE("rank-one NT matches the T-pair dictionary on random systems") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 120; ++trial) {
    DynSys d = corpus::random_dynsys(rng, 1, 5, /*total=*/trial % 2, /*bijective=*/false);
    int n = d.point_count();
    for (uint64_t h0 = 0; h0 < (uint64_t{1} << n); ++h0)
      for (uint64_t h1 = 0; h1 < (uint64_t{1} << n); ++h1) {
        TupleFamily fam = fixtures::fam1(VertexSet(h0), VertexSet(h1));
        CHECK(dyn_is_nt_tuple(d, fam) == oracle::dyn_tpair_accepts(d, VertexSet(h0), VertexSet(h1)));
      }
  }
}

TEST_CASE("NT decisions agree with the boxed oracle route") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 150; ++trial) {
    DynSys d = corpus::random_dynsys(rng, 2, 4, trial % 2, false);
    TupleFamily fam(2);
    for (FMask f = 0; f < 4; ++f) {
      VertexSet s;
      for (int v = 0; v < d.point_count(); ++v)
        if (corpus::pick(rng, 0, 1)) s.add(v);
      fam[f] = s;
    }
    CHECK(dyn_is_nt_tuple(d, fam) == oracle::dyn_nt_boxed(d, fam));
  }
}

TEST_CASE("invariant subsets of the small permutation systems") {
  DynSys swap = make_dynsys(1, {"1", "2"}, {{1, 0}});
  auto inv = dyn_invariant_subsets(swap);
  REQUIRE(inv.size() == 2);
  CHECK(inv[0] == VertexSet{});
  CHECK(inv[1] == VertexSet::full(2));

  DynSys ident = make_dynsys(1, {"1", "2"}, {{0, 1}});
  CHECK(dyn_invariant_subsets(ident).size() == 4);

  DynSys cycle3 = make_dynsys(1, {"1", "2", "3"}, {{1, 2, 0}});
  auto inv3 = dyn_invariant_subsets(cycle3);
  REQUIRE(inv3.size() == 2);
  CHECK(inv3[1] == VertexSet::full(3));

  CHECK_THROWS_AS(dyn_invariant_subsets(collapse2()), InputError);  // not surjective
}

TEST_CASE("preimage transfers of valid systems commute on every subset") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 80; ++trial) {
    DynSys d = corpus::random_dynsys(rng, 2, 5, trial % 2, false);
    REQUIRE(validate_dynsys(d).ok());
    TransferSystem t = dyn_transfer(d);
    for (uint64_t bits = 0; bits < (uint64_t{1} << d.point_count()); ++bits) {
      VertexSet s(bits);
      CHECK(t.apply(0, t.apply(1, s)) == t.apply(1, t.apply(0, s)));
    }
  }
}

TEST_CASE("invariant subsets are closed under meet and least-invariant join") {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 40; ++trial) {
    DynSys d = corpus::random_dynsys(rng, 1 + trial % 2, 6, true, true);
    auto inv = dyn_invariant_subsets(d);
    std::set<uint64_t> bits;
    for (VertexSet s : inv) bits.insert(s.bits());
    for (VertexSet a : inv)
      for (VertexSet b : inv) {
        CHECK(bits.count((a & b).bits()) == 1);
        // least invariant superset of the union
        VertexSet least = VertexSet::full(d.point_count());
        for (VertexSet s : inv)
          if ((a | b).subset_of(s)) least = least & s;
        CHECK(bits.count(least.bits()) == 1);
        CHECK((a | b).subset_of(least));
      }
  }
}

TEST_CASE("automorphic systems: invariant subsets match the upper-full NT check") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 60; ++trial) {
    int rank = 1 + trial % 2;
    DynSys d = corpus::random_dynsys(rng, rank, 6, /*total=*/true, /*bijective=*/true);
    int n = d.point_count();
    auto inv = dyn_invariant_subsets(d);
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
      VertexSet h(bits);
      TupleFamily fam = TupleFamily::all_full(rank, n);
      fam[0] = h;
      bool in_inv = false;
      for (VertexSet s : inv)
        if (s == h) in_inv = true;
      // invariant subsets are exactly sigma_i(H) = H for permutations
      bool fixed = true;
      for (int c = 0; c < rank; ++c) {
        VertexSet image;
        h.for_each([&](int v) { image.add(d.maps[c][v]); });
        if (image != h) fixed = false;
      }
      CHECK(in_inv == fixed);
      CHECK(dyn_is_nt_tuple(d, fam) == in_inv);
    }
  }
}
