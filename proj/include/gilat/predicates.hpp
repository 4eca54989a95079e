#pragma once

#include <set>

#include "gilat/base.hpp"
#include "gilat/kgraph.hpp"
#include "gilat/transfer.hpp"

namespace gilat {

/// Vertices emitting no edge of any color in F.
inline VertexSet f_sources(const KGraph& g, FMask f) {
  if (f == 0) throw InputError("F must be nonempty");
  VertexSet out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    bool source = true;
    for (int c : fmask_colors(f))
      if (!g.out_edges(c, v).empty()) source = false;
    if (source) out.add(v);
  }
  return out;
}

/// Closure of S under the one-step transfers of the given colors.
inline VertexSet reach_closure(const KGraph& g, FMask colors, VertexSet s) {
  VertexSet cur = s;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int c : fmask_colors(colors)) {
      VertexSet next = cur | g.step(c, cur);
      if (next != cur) {
        cur = next;
        grew = true;
      }
    }
  }
  return cur;
}

/// F-tracing vertices: every vertex reachable along F-complement colors
/// (including the vertex itself) is not an F-source. Finiteness clauses
/// hold automatically for finite graphs.
inline VertexSet f_tracing(const KGraph& g, FMask f) {
  if (f == 0) throw InputError("F must be nonempty");
  FMask complement = ((FMask{1} << g.rank()) - 1) & ~f;
  VertexSet sources = f_sources(g, f);
  VertexSet out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if ((reach_closure(g, complement, VertexSet::single(v)) & sources).empty()) out.add(v);
  return out;
}

/// H0 together with the vertices off H0 that are not F-sources in the
/// quotient graph off H0.
inline VertexSet jf_vertices(const KGraph& g, FMask f, VertexSet h0) {
  if (f == 0) throw InputError("F must be nonempty");
  if (!is_hereditary(g, h0)) throw InputError("jf_vertices requires a hereditary set");
  VertexSet out = h0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (h0.contains(v)) continue;
    for (int c : fmask_colors(f)) {
      bool emits = false;
      for (int e : g.out_edges(c, v))
        if (!h0.contains(g.edge(e).source)) emits = true;
      if (emits) {
        out.add(v);
        break;
      }
    }
  }
  return out;
}

/// Saturated: a vertex that emits some color i and whose color-i sources
/// all lie in H must already lie in H.
inline bool is_saturated(const KGraph& g, VertexSet h) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (h.contains(v)) continue;
    for (int c = 0; c < g.rank(); ++c) {
      if (g.out_edges(c, v).empty()) continue;
      if (g.step(c, VertexSet::single(v)).subset_of(h)) return false;
    }
  }
  return true;
}

/// Least saturated superset, by fixed-point iteration.
inline VertexSet saturation(const KGraph& g, VertexSet h) {
  if (!is_hereditary(g, h)) throw InputError("saturation requires a hereditary set");
  VertexSet cur = h;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (cur.contains(v)) continue;
      for (int c = 0; c < g.rank(); ++c) {
        if (g.out_edges(c, v).empty()) continue;
        if (g.step(c, VertexSet::single(v)).subset_of(cur)) {
          cur.add(v);
          grew = true;
          break;
        }
      }
    }
  }
  return cur;
}

inline bool is_sourceless(const KGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int c = 0; c < g.rank(); ++c)
      if (g.out_edges(c, v).empty()) return false;
  return true;
}

/// Locally convex: a vertex with edges of two colors passes each color on
/// to the other edge's source.
inline bool is_locally_convex(const KGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int i = 0; i < g.rank(); ++i)
      for (int j = 0; j < g.rank(); ++j) {
        if (i == j) continue;
        if (g.out_edges(i, v).empty() || g.out_edges(j, v).empty()) continue;
        for (int e : g.out_edges(i, v))
          if (g.out_edges(j, g.edge(e).source).empty()) return false;
      }
  return true;
}

/// All hereditary subsets, ascending by (popcount, mask). Closure-generated
/// enumeration; the count is capped.
inline std::vector<VertexSet> hereditary_sets(const KGraph& g, size_t cap = size_t{1} << 20) {
  std::vector<VertexSet> out;
  std::set<uint64_t> seen;
  auto push = [&](VertexSet s) {
    if (!seen.insert(s.bits()).second) return false;
    out.push_back(s);
    if (out.size() > cap) throw ResourceError("hereditary set enumeration exceeds cap");
    return true;
  };
  push(VertexSet{});
  for (size_t head = 0; head < out.size(); ++head) {
    VertexSet base = out[head];
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (base.contains(v)) continue;
      push(hereditary_closure(g, base | VertexSet::single(v)));
    }
  }
  std::sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a.bits() < b.bits();
  });
  return out;
}

}  // namespace gilat
