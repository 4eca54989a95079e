#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gilat/base.hpp"
#include "gilat/family.hpp"
#include "gilat/kgraph.hpp"
#include "gilat/nt.hpp"
#include "gilat/predicates.hpp"

namespace gilat {

struct EnumerationOptions {
  uint64_t capacity = 256;        // bound on |vertices| * 2^rank
  size_t max_nodes = size_t{1} << 20;
};

namespace detail {

// Closed sets of the F-complement reachability closure inside [base, bound],
// ascending by mask.
inline std::vector<VertexSet> closed_sets_between(const KGraph& g, FMask complement,
                                                  VertexSet base, VertexSet bound,
                                                  size_t cap) {
  std::vector<VertexSet> out;
  base = reach_closure(g, complement, base);
  if (!base.subset_of(bound)) return out;
  std::set<uint64_t> seen;
  out.push_back(base);
  seen.insert(base.bits());
  for (size_t head = 0; head < out.size(); ++head) {
    VertexSet cur = out[head];
    (bound - cur).for_each([&](int v) {
      VertexSet next = reach_closure(g, complement, cur | VertexSet::single(v));
      if (!next.subset_of(bound)) return;
      if (seen.insert(next.bits()).second) {
        out.push_back(next);
        if (out.size() > cap) throw ResourceError("component enumeration exceeds cap");
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// All NT-families of the graph in canonical order (lexicographic on
/// component masks). Searches hereditary bottoms, then components upward
/// by |F| within the covariance bound, then filters by absorption.
inline std::vector<TupleFamily> enumerate_nt_tuples(const KGraph& g,
                                                    const EnumerationOptions& opts = {}) {
  uint64_t load = static_cast<uint64_t>(g.vertex_count()) << g.rank();
  if (load > opts.capacity)
    throw ResourceError("graph exceeds enumeration capacity: |vertices|*2^rank = " +
                        std::to_string(load) + " > " + std::to_string(opts.capacity));

  int rank = g.rank();
  FMask all = (FMask{1} << rank) - 1;
  TransferSystem t = transfer_system(g);

  // F in ascending (|F|, mask) order, excluding the empty set.
  std::vector<FMask> forder;
  for (FMask f = 1; f <= all; ++f) forder.push_back(f);
  std::sort(forder.begin(), forder.end(), [](FMask a, FMask b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return a < b;
  });

  std::vector<TupleFamily> found;
  for (VertexSet h0 : hereditary_sets(g, opts.max_nodes)) {
    std::vector<VertexSet> jf(size_t{1} << rank);
    for (FMask f = 1; f <= all; ++f) jf[f] = jf_vertices(g, f, h0);

    TupleFamily partial(rank);
    partial[0] = h0;
    auto rec = [&](auto&& self, size_t pos) -> void {
      if (pos == forder.size()) {
        for (FMask f = 1; f < all; ++f) {
          RfConditionSets sets = rf_condition_sets(g, t, partial, f);
          if (!((sets.h1 & sets.h2 & sets.h3) - partial[f]).empty()) return;
        }
        found.push_back(partial);
        if (found.size() > opts.max_nodes) throw ResourceError("family enumeration exceeds cap");
        return;
      }
      FMask f = forder[pos];
      VertexSet base = h0;
      for (FMask d : subsets_of(f))
        if (d != f) base = base | partial[d];
      for (VertexSet cand :
           detail::closed_sets_between(g, all & ~f, base, jf[f], opts.max_nodes)) {
        partial[f] = cand;
        self(self, pos + 1);
      }
      partial[f] = VertexSet{};
    };
    rec(rec, 0);
  }

  std::sort(found.begin(), found.end());
  return found;
}

inline std::vector<TupleFamily> enumerate_no_tuples(const KGraph& g,
                                                    const EnumerationOptions& opts = {}) {
  std::vector<TupleFamily> out;
  for (const TupleFamily& h : enumerate_nt_tuples(g, opts))
    if (is_no_tuple(g, h)) out.push_back(h);
  return out;
}

inline std::vector<TupleFamily> enumerate_relative_no_tuples(const KGraph& g, const TupleFamily& k,
                                                             const EnumerationOptions& opts = {}) {
  std::vector<TupleFamily> out;
  for (const TupleFamily& h : enumerate_nt_tuples(g, opts))
    if (k.subset_of(h)) out.push_back(h);
  return out;
}

/// Meet of two NT-families: componentwise intersection.
inline TupleFamily meet(const KGraph& g, const TupleFamily& a, const TupleFamily& b) {
  NtDiagnostics d;
  if (!is_nt_tuple(g, a, &d)) throw InputError("meet: first input is not NT (" + d.message + ")");
  if (!is_nt_tuple(g, b, &d)) throw InputError("meet: second input is not NT (" + d.message + ")");
  TupleFamily out(a.rank());
  FMask all = (FMask{1} << a.rank()) - 1;
  for (FMask f = 0; f <= all; ++f) out[f] = a[f] & b[f];
  if (!is_nt_tuple(g, out)) throw std::logic_error("meet of NT-families must be NT");
  return out;
}

/// Join inside the enumerated lattice: meet of all upper bounds of the
/// componentwise union.
inline TupleFamily join(const KGraph& g, const TupleFamily& a, const TupleFamily& b,
                        const std::vector<TupleFamily>& nodes) {
  NtDiagnostics d;
  if (!is_nt_tuple(g, a, &d)) throw InputError("join: first input is not NT (" + d.message + ")");
  if (!is_nt_tuple(g, b, &d)) throw InputError("join: second input is not NT (" + d.message + ")");
  FMask all = (FMask{1} << a.rank()) - 1;
  TupleFamily unionf(a.rank());
  for (FMask f = 0; f <= all; ++f) unionf[f] = a[f] | b[f];
  bool seeded = false;
  TupleFamily out(a.rank());
  for (const TupleFamily& n : nodes) {
    if (!unionf.subset_of(n)) continue;
    if (!seeded) {
      out = n;
      seeded = true;
    } else {
      for (FMask f = 0; f <= all; ++f) out[f] = out[f] & n[f];
    }
  }
  if (!seeded) throw std::logic_error("join: no upper bound in the lattice (missing top?)");
  return out;
}

/// The iteration formula for the join: in the quotient off the supplied
/// bottom, sum the components and iterate. Cross-checked against the
/// lattice join in tests.
inline TupleFamily join_formula_check_iterations(const KGraph& g, const TupleFamily& a,
                                                 const TupleFamily& b, VertexSet h0,
                                                 int iterations) {
  if (!is_hereditary(g, h0)) throw InputError("join formula: bottom set must be hereditary");
  FMask all = (FMask{1} << g.rank()) - 1;
  QuotientResult q = quotient_graph_with_map(g, h0);
  TupleFamily cur(g.rank());
  for (FMask f = 1; f <= all; ++f) cur[f] = map_vertex_set((a[f] | b[f]) - h0, q.old_to_new);
  for (int i = 0; i < iterations; ++i) cur = iterate_once(q.graph, cur);
  TupleFamily out(g.rank());
  out[0] = h0;
  for (FMask f = 1; f <= all; ++f) out[f] = h0 | unmap_vertex_set(cur[f], q.new_to_old);
  return out;
}

inline TupleFamily join_formula_check(const KGraph& g, const TupleFamily& a, const TupleFamily& b,
                                      VertexSet h0) {
  return join_formula_check_iterations(g, a, b, h0, g.rank() - 1);
}

struct LatticeNode {
  TupleFamily family;
  bool is_no = false;
  bool is_m = false;
  bool has_antichain = false;
  std::vector<FMask> antichain;  // minimal nonempty components, single-vertex case
};

struct IdealLattice {
  int rank = 1;
  std::vector<LatticeNode> nodes;
  std::vector<std::pair<int, int>> covers;  // (lower, upper) indices
};

/// Minimal elements of the support {F : component nonempty}.
inline std::vector<FMask> minimal_support(const TupleFamily& h) {
  FMask all = (FMask{1} << h.rank()) - 1;
  std::vector<FMask> mins;
  for (FMask f = 0; f <= all; ++f) {
    if (h[f].empty()) continue;
    bool minimal = true;
    for (FMask d = 0; d < f && minimal; ++d)
      if ((d & f) == d && !h[d].empty()) minimal = false;
    if (minimal) mins.push_back(f);
  }
  return mins;
}

/// Hasse diagram: covers are the transitive reduction of componentwise
/// inclusion. Node annotations are computed here.
inline IdealLattice hasse(const KGraph& g, const std::vector<TupleFamily>& nodes) {
  for (size_t i = 0; i < nodes.size(); ++i)
    for (size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i] == nodes[j]) throw InputError("hasse: duplicate nodes");
  IdealLattice lat;
  lat.rank = g.rank();
  bool label_antichains = g.vertex_count() == 1 && is_sourceless(g);
  for (const TupleFamily& h : nodes) {
    LatticeNode n{h, false, false, false, {}};
    n.is_no = is_no_tuple(g, h);
    n.is_m = is_m_tuple(g, h);
    if (label_antichains) {
      n.has_antichain = true;
      n.antichain = minimal_support(h);
    }
    lat.nodes.push_back(std::move(n));
  }
  size_t c = nodes.size();
  std::vector<std::vector<bool>> le(c, std::vector<bool>(c, false));
  for (size_t i = 0; i < c; ++i)
    for (size_t j = 0; j < c; ++j) le[i][j] = nodes[i].subset_of(nodes[j]);
  for (size_t i = 0; i < c; ++i)
    for (size_t j = 0; j < c; ++j) {
      if (i == j || !le[i][j]) continue;
      bool cover = true;
      for (size_t m = 0; m < c && cover; ++m)
        if (m != i && m != j && le[i][m] && le[m][j]) cover = false;
      if (cover) lat.covers.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return lat;
}

struct Report {
  bool ok = true;
  std::vector<std::string> lines;
  std::string text() const {
    std::string out;
    for (const std::string& l : lines) out += l + "\n";
    return out;
  }
  void note(const std::string& line) { lines.push_back(line); }
  void check(bool cond, const std::string& line) {
    lines.push_back(std::string(cond ? "ok   " : "FAIL ") + line);
    ok = ok && cond;
  }
};

namespace detail {

inline std::string set_label(const KGraph& g, VertexSet s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int v) {
    if (!first) out += ",";
    out += g.vertex_name(v);
    first = false;
  });
  return out + "}";
}

}  // namespace detail

/// Regular (sourceless) case: NO-families are exactly the hereditary and
/// negatively invariant bottoms with full upper components; single-vertex
/// graphs additionally get the antichain labelling.
inline Report regular_case_report(const KGraph& g, const EnumerationOptions& opts = {}) {
  if (!is_sourceless(g)) throw InputError("regular report requires a sourceless graph");
  Report rep;
  FMask all = (FMask{1} << g.rank()) - 1;

  std::vector<TupleFamily> predicted;
  for (VertexSet h0 : hereditary_sets(g)) {
    if (!is_neg_invariant(g, h0)) continue;
    TupleFamily fam = TupleFamily::all_full(g.rank(), g.vertex_count());
    fam[0] = h0;
    predicted.push_back(fam);
    rep.note("invariant bottom: " + detail::set_label(g, h0));
  }
  std::sort(predicted.begin(), predicted.end());
  std::vector<TupleFamily> no = enumerate_no_tuples(g, opts);
  rep.check(predicted == no, "NO-families are exactly the invariant bottoms with full components (" +
                                 std::to_string(no.size()) + " of them)");

  if (g.vertex_count() == 1) {
    std::vector<TupleFamily> nt = enumerate_nt_tuples(g, opts);
    bool bijective = true;
    std::set<std::vector<FMask>> seen;
    for (size_t idx = 0; idx < nt.size(); ++idx) {
      std::vector<FMask> label = minimal_support(nt[idx]);
      if (!seen.insert(label).second) bijective = false;
      // The family must be the upward closure of its label.
      TupleFamily expect(g.rank());
      for (FMask f = 0; f <= all; ++f)
        for (FMask s : label)
          if ((s & f) == s) expect[f] = VertexSet::full(1);
      if (expect != nt[idx]) bijective = false;
      std::string line = "antichain {";
      for (size_t i = 0; i < label.size(); ++i)
        line += (i ? "," : "") + fmask_to_string(label[i]);
      rep.note(line + "} <-> family #" + std::to_string(idx));
    }
    rep.check(bijective, "NT-families biject with antichains of the color subsets (" +
                             std::to_string(nt.size()) + " of them)");
  }
  return rep;
}

/// Locally convex case: NO-families biject with hereditary saturated sets,
/// components being tracing-plus-bottom, and joins match
/// saturation-of-union.
inline Report rsy_report(const KGraph& g, const EnumerationOptions& opts = {}) {
  if (!is_locally_convex(g)) throw InputError("rsy report requires a locally convex graph");
  Report rep;
  FMask all = (FMask{1} << g.rank()) - 1;

  std::vector<VertexSet> hs;
  for (VertexSet h0 : hereditary_sets(g))
    if (is_saturated(g, h0)) hs.push_back(h0);
  auto family_of = [&](VertexSet h0) {
    TupleFamily fam(g.rank());
    fam[0] = h0;
    for (FMask f = 1; f <= all; ++f) fam[f] = f_tracing(g, f) | h0;
    return fam;
  };

  std::vector<TupleFamily> predicted;
  for (VertexSet h0 : hs) {
    predicted.push_back(family_of(h0));
    rep.note("hereditary saturated: " + detail::set_label(g, h0));
  }
  std::sort(predicted.begin(), predicted.end());
  std::vector<TupleFamily> no = enumerate_no_tuples(g, opts);
  rep.check(predicted == no, "NO-families are exactly the tracing families over hereditary "
                             "saturated bottoms (" + std::to_string(no.size()) + " of them)");

  std::vector<TupleFamily> nt = enumerate_nt_tuples(g, opts);
  bool joins_ok = true;
  for (size_t i = 0; i < hs.size(); ++i)
    for (size_t j = i; j < hs.size(); ++j) {
      // Unions of hereditary sets are hereditary, so the saturation applies.
      VertexSet expect_bottom = saturation(g, hs[i] | hs[j]);
      TupleFamily joined = join(g, family_of(hs[i]), family_of(hs[j]), nt);
      if (joined != family_of(expect_bottom)) joins_ok = false;
    }
  rep.check(joins_ok, "NO-joins agree with saturation of unions");
  return rep;
}

}  // namespace gilat
