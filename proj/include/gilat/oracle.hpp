#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "gilat/base.hpp"
#include "gilat/dynsys.hpp"
#include "gilat/family.hpp"
#include "gilat/kgraph.hpp"
#include "gilat/transfer.hpp"

// Deliberately naive verifiers. These avoid the main-path helpers
// (reachability closures, the index/period engine) so that agreement is a
// genuine cross-check and not a tautology.

namespace gilat::oracle {

using StepFn = std::function<VertexSet(int, VertexSet)>;

namespace detail {

// Orbit of the start state under the active colors, vector-scan dedup.
inline std::vector<VertexSet> naive_orbit(const StepFn& step, const std::vector<int>& colors,
                                          VertexSet start, size_t cap) {
  std::vector<VertexSet> states{start};
  for (size_t head = 0; head < states.size(); ++head) {
    for (int c : colors) {
      VertexSet nxt = step(c, states[head]);
      bool known = false;
      for (const VertexSet& s : states)
        if (s == nxt) known = true;
      if (!known) {
        states.push_back(nxt);
        if (states.size() > cap) throw ResourceError("oracle orbit exceeds cap");
      }
    }
  }
  return states;
}

struct NaivePeriods {
  std::vector<uint64_t> index, period;  // per active color
};

inline NaivePeriods naive_periods(const StepFn& step, const std::vector<int>& colors,
                                  const std::vector<VertexSet>& orbit) {
  NaivePeriods out;
  for (int c : colors) {
    uint64_t r = 0, q = 1;
    for (const VertexSet& s0 : orbit) {
      std::vector<VertexSet> seq{s0};
      while (true) {
        VertexSet nxt = step(c, seq.back());
        size_t hit = seq.size();
        for (size_t i = 0; i < seq.size(); ++i)
          if (seq[i] == nxt) hit = i;
        if (hit < seq.size()) {
          uint64_t tail = hit;
          uint64_t cyc = seq.size() - hit;
          r = std::max(r, tail);
          q = std::lcm(q, cyc);
          if (q > kPeriodCap) throw ResourceError("oracle period exceeds cap");
          break;
        }
        seq.push_back(nxt);
      }
    }
    out.index.push_back(r);
    out.period.push_back(q);
  }
  return out;
}

// Literal sweep of T^n(start) over r <= n <= box on the active colors.
inline bool sweep_box(const StepFn& step, const std::vector<int>& colors, VertexSet start,
                      VertexSet target, const std::vector<uint64_t>& lo,
                      const std::vector<uint64_t>& hi) {
  uint64_t total = 1;
  for (size_t i = 0; i < colors.size(); ++i) {
    uint64_t w = hi[i] - lo[i] + 1;
    if (total > kResidueCap / w) throw ResourceError("oracle box exceeds cap");
    total *= w;
  }
  std::vector<uint64_t> n = lo;
  while (true) {
    VertexSet cur = start;
    for (size_t i = 0; i < colors.size(); ++i)
      for (uint64_t s = 0; s < n[i]; ++s) cur = step(colors[i], cur);
    if (!cur.subset_of(target)) return false;
    size_t i = 0;
    while (i < colors.size() && ++n[i] > hi[i]) {
      n[i] = lo[i];
      ++i;
    }
    if (i == colors.size()) break;
  }
  return true;
}

}  // namespace detail

/// Truncated evaluation of the eventual-containment quantifier over the
/// supplied box, beyond the index. The box must reach index + 2*period on
/// every active color, otherwise the verdict would not transfer to the
/// infinite quantifier and the oracle reports inconclusive instead.
inline bool boxed_eventual(const StepFn& step, FMask active, VertexSet start, VertexSet target,
                           const Degree& box) {
  if (active == 0) return start.subset_of(target);
  std::vector<int> colors = fmask_colors(active);
  auto orbit = detail::naive_orbit(step, colors, start, kOrbitCap);
  auto pq = detail::naive_periods(step, colors, orbit);
  std::vector<uint64_t> lo, hi;
  for (size_t i = 0; i < colors.size(); ++i) {
    if (box[colors[i]] < 0) throw InputError("box entries must be nonnegative");
    uint64_t need = pq.index[i] + 2 * pq.period[i];
    uint64_t have = static_cast<uint64_t>(box[colors[i]]);
    if (have < need)
      throw InconclusiveError("box too small on color " + std::to_string(colors[i] + 1) + ": need " +
                              std::to_string(need) + ", have " + std::to_string(have));
    lo.push_back(pq.index[i]);
    hi.push_back(have);
  }
  return detail::sweep_box(step, colors, start, target, lo, hi);
}

inline bool boxed_eventual(const TransferSystem& t, FMask active, VertexSet start, VertexSet target,
                           const Degree& box) {
  if (!t.commute(active)) throw InputError("transfer maps do not commute on the active colors");
  return boxed_eventual([&t](int c, VertexSet s) { return t.apply(c, s); }, active, start, target,
                        box);
}

/// Self-sizing variant: picks the box index + 2*period itself.
inline bool naive_eventual(const StepFn& step, FMask active, VertexSet start, VertexSet target) {
  if (active == 0) return start.subset_of(target);
  std::vector<int> colors = fmask_colors(active);
  auto orbit = detail::naive_orbit(step, colors, start, kOrbitCap);
  auto pq = detail::naive_periods(step, colors, orbit);
  std::vector<uint64_t> lo = pq.index, hi;
  for (size_t i = 0; i < colors.size(); ++i) hi.push_back(pq.index[i] + 2 * pq.period[i]);
  return detail::sweep_box(step, colors, start, target, lo, hi);
}

/// All pairs (H0, H1) with H0 hereditary and H0 <= H1 inside the vertex set
/// of the compact-and-annihilating ideal over H0, straight from the
/// rank-one definitions by brute force over all subsets.
inline std::vector<std::pair<VertexSet, VertexSet>> katsura_tpairs(const KGraph& g) {
  if (g.rank() != 1) throw InputError("katsura_tpairs requires a 1-graph");
  int n = g.vertex_count();
  if (n > 20) throw ResourceError("katsura_tpairs: too many vertices for brute force");
  std::vector<std::pair<VertexSet, VertexSet>> out;
  for (uint64_t h0bits = 0; h0bits < (uint64_t{1} << n); ++h0bits) {
    VertexSet h0(h0bits);
    bool hereditary = true;
    for (const Edge& e : g.edges())
      if (h0.contains(e.range) && !h0.contains(e.source)) hereditary = false;
    if (!hereditary) continue;
    // J(I_H0, X): H0 plus the vertices emitting an edge whose source
    // escapes H0.
    VertexSet j = h0;
    for (const Edge& e : g.edges())
      if (!h0.contains(e.source)) j.add(e.range);
    VertexSet slack = j - h0;
    auto elems = slack.elements();
    for (uint64_t pick = 0; pick < (uint64_t{1} << elems.size()); ++pick) {
      VertexSet h1 = h0;
      for (size_t i = 0; i < elems.size(); ++i)
        if ((pick >> i) & 1) h1.add(elems[i]);
      out.emplace_back(h0, h1);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.bits() != b.first.bits()) return a.first.bits() < b.first.bits();
    return a.second.bits() < b.second.bits();
  });
  return out;
}

namespace detail {

// Edge-scan one-step transfer, quotient-aware: only edges whose source
// avoids `removed` count, and results stay off `removed`.
inline VertexSet scan_step(const KGraph& g, int color, VertexSet s, VertexSet removed) {
  VertexSet out;
  for (const Edge& e : g.edges()) {
    if (e.color != color) continue;
    if (removed.contains(e.source)) continue;
    if (s.contains(e.range)) out.add(e.source);
  }
  return out;
}

inline VertexSet scan_reach(const KGraph& g, FMask colors, VertexSet s, VertexSet removed) {
  VertexSet cur = s;
  while (true) {
    VertexSet next = cur;
    for (int c : fmask_colors(colors)) next = next | scan_step(g, c, cur, removed);
    if (next == cur) return cur;
    cur = next;
  }
}

inline VertexSet scan_reach_generic(const StepFn& step, FMask colors, VertexSet s) {
  VertexSet cur = s;
  while (true) {
    VertexSet next = cur;
    for (int c : fmask_colors(colors)) next = next | step(c, cur);
    if (next == cur) return cur;
    cur = next;
  }
}

inline bool scan_is_f_source(const KGraph& g, int v, FMask f, VertexSet removed) {
  for (const Edge& e : g.edges())
    if (e.range == v && !removed.contains(e.source) && (f & (FMask{1} << e.color))) return false;
  return true;
}

inline bool scan_is_tracing(const KGraph& g, int v, FMask f, VertexSet removed) {
  FMask complement = ((FMask{1} << g.rank()) - 1) & ~f;
  VertexSet orbit = scan_reach(g, complement, VertexSet::single(v), removed);
  bool ok = true;
  orbit.for_each([&](int w) {
    if (scan_is_f_source(g, w, f, removed)) ok = false;
  });
  return ok;
}

}  // namespace detail

/// Alternative NT decision through the absorbent-family characterisation
/// in the quotient off the bottom component. Agrees with the main decision
/// on every family.
inline bool nt_via_absorbent(const KGraph& g, const TupleFamily& h, std::string* why = nullptr) {
  FMask all = (FMask{1} << g.rank()) - 1;
  auto reject = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };

  // (ii) hereditary family, edge scans; the bottom first.
  for (const Edge& e : g.edges())
    if (h[0].contains(e.range) && !h[0].contains(e.source))
      return reject("not hereditary at F={} via edge " + e.id);
  for (FMask f = 0; f <= all; ++f)
    for (const Edge& e : g.edges()) {
      if (f & (FMask{1} << e.color)) continue;
      if (h[f].contains(e.range) && !h[f].contains(e.source))
        return reject("not hereditary at F=" + fmask_to_string(f) + " via edge " + e.id);
    }

  // (i) covariance bound in the quotient off the bottom.
  VertexSet removed = h[0];
  for (FMask f = 1; f <= all; ++f) {
    bool ok = true;
    (h[f] - h[0]).for_each([&](int v) {
      if (detail::scan_is_f_source(g, v, f, removed)) ok = false;
    });
    if (!ok) return reject("component exceeds covariance bound at F=" + fmask_to_string(f));
  }

  // (iii) partial order, all pairs.
  for (FMask f1 = 0; f1 <= all; ++f1)
    for (FMask f2 = 0; f2 <= all; ++f2)
      if ((f1 & f2) == f1 && !h[f1].subset_of(h[f2]))
        return reject("not partially ordered between F=" + fmask_to_string(f1) + " and F=" +
                      fmask_to_string(f2));

  // (iv) the reduced family must be absorbent in the quotient.
  auto step = [&](int c, VertexSet s) { return detail::scan_step(g, c, s, removed); };
  for (FMask f = 1; f < all; ++f) {
    FMask complement = all & ~f;
    VertexSet above = VertexSet::full(g.vertex_count()) - removed;
    for (FMask d : strict_supersets(f, g.rank())) above = above & (h[d] - removed);
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (removed.contains(v)) continue;
      if (!detail::scan_is_tracing(g, v, f, removed)) continue;
      if (!detail::scan_reach(g, complement, VertexSet::single(v), removed).subset_of(above))
        continue;
      if (!naive_eventual(step, complement, VertexSet::single(v), h[f] - removed)) continue;
      if (!(h[f] - removed).contains(v))
        return reject("absorption fails at F=" + fmask_to_string(f) + ", witness " +
                      g.vertex_name(v));
    }
  }
  return true;
}

/// NO decision on the absorbent route: NT plus tracing containment, all by
/// edge scans.
inline bool no_via_absorbent(const KGraph& g, const TupleFamily& h, std::string* why = nullptr) {
  if (!nt_via_absorbent(g, h, why)) return false;
  FMask all = (FMask{1} << g.rank()) - 1;
  for (FMask f = 1; f <= all; ++f)
    for (int v = 0; v < g.vertex_count(); ++v)
      if (detail::scan_is_tracing(g, v, f, VertexSet{}) && !h[f].contains(v)) {
        if (why)
          *why = "tracing vertex " + g.vertex_name(v) + " outside component at F=" +
                 fmask_to_string(f);
        return false;
      }
  return true;
}

/// Maximal tuples are the NT tuples with empty bottom.
inline bool m_via_absorbent(const KGraph& g, const TupleFamily& h, std::string* why = nullptr) {
  if (!h[0].empty()) {
    if (why) *why = "empty-set component must be empty";
    return false;
  }
  return nt_via_absorbent(g, h, why);
}

/// For the one-vertex graph with loops in every color: the families cut
/// out by upward closures of antichains of color subsets.
inline std::vector<TupleFamily> antichain_families(const KGraph& g) {
  if (g.vertex_count() != 1) throw InputError("antichain_families requires a single vertex");
  int rank = g.rank();
  if (rank > 4) throw ResourceError("antichain_families: rank too large for brute force");
  FMask all = (FMask{1} << rank) - 1;
  std::vector<TupleFamily> out;
  int subsets = 1 << rank;
  for (uint64_t pick = 0; pick < (uint64_t{1} << subsets); ++pick) {
    std::vector<FMask> members;
    for (int f = 0; f < subsets; ++f)
      if ((pick >> f) & 1) members.push_back(static_cast<FMask>(f));
    bool antichain = true;
    for (size_t a = 0; a < members.size() && antichain; ++a)
      for (size_t b = 0; b < members.size() && antichain; ++b)
        if (a != b && (members[a] & members[b]) == members[a]) antichain = false;
    if (!antichain) continue;
    TupleFamily fam(rank);
    for (FMask f = 0; f <= all; ++f)
      for (FMask m : members)
        if ((m & f) == m) fam[f] = VertexSet::full(1);
    out.push_back(fam);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Rank-one dynamics: the T-pair condition through the endomorphism
/// dictionary, by direct point checks.
inline bool dyn_tpair_accepts(const DynSys& d, VertexSet h0, VertexSet h1) {
  if (d.rank != 1) throw InputError("dyn_tpair_accepts requires rank one");
  int n = d.point_count();
  // positive invariance: preimages of H0 stay in H0
  for (int v = 0; v < n; ++v)
    if (d.maps[0][v] >= 0 && h0.contains(d.maps[0][v]) && !h0.contains(v)) return false;
  if (!h0.subset_of(h1)) return false;
  // H1 within J(I_H0): points not wholly pre-imaged into H0, plus H0.
  for (int v = 0; v < n; ++v) {
    if (!h1.contains(v) || h0.contains(v)) continue;
    bool all_preimages_inside = true;
    for (int w = 0; w < n; ++w)
      if (d.maps[0][w] == v && !h0.contains(w)) all_preimages_inside = false;
    if (all_preimages_inside) return false;
  }
  return true;
}

/// Naive route for the dynamics NT check: the same four conditions with
/// point scans and the literal boxed quantifier.
inline bool dyn_nt_boxed(const DynSys& d, const TupleFamily& h, std::string* why = nullptr) {
  if (!validate_dynsys(d).ok()) throw InputError("dyn_nt_boxed requires a valid system");
  auto reject = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  int n = d.point_count();
  FMask all = (FMask{1} << d.rank) - 1;
  auto step = [&](int c, VertexSet s) {
    VertexSet out;
    for (int v = 0; v < n; ++v)
      if (d.maps[c][v] >= 0 && s.contains(d.maps[c][v])) out.add(v);
    return out;
  };
  auto w_of = [&](FMask f) {
    VertexSet out;
    for (int v = 0; v < n; ++v) {
      bool in = true;
      for (int c : fmask_colors(f))
        if (!step(c, VertexSet::single(v)).subset_of(h[0])) in = false;
      if (in) out.add(v);
    }
    return out;
  };
  for (FMask f = 1; f <= all; ++f)
    if (!((h[f] & w_of(f)) - h[0]).empty())
      return reject("annihilator bound fails at F=" + fmask_to_string(f));
  for (FMask f = 0; f <= all; ++f)
    for (int c = 0; c < d.rank; ++c) {
      if (f & (FMask{1} << c)) continue;
      if (!step(c, h[f]).subset_of(h[f]))
        return reject("not invariant at F=" + fmask_to_string(f));
    }
  for (FMask f1 = 0; f1 <= all; ++f1)
    for (FMask f2 = 0; f2 <= all; ++f2)
      if ((f1 & f2) == f1 && !h[f1].subset_of(h[f2])) return reject("not partially ordered");
  for (FMask f = 1; f < all; ++f) {
    FMask complement = all & ~f;
    VertexSet annihilator = h[0] | (VertexSet::full(n) - w_of(f));
    VertexSet above = VertexSet::full(n);
    for (FMask s : strict_supersets(f, d.rank)) above = above & h[s];
    for (int v = 0; v < n; ++v) {
      VertexSet orbit = detail::scan_reach_generic(step, complement, VertexSet::single(v));
      if (!orbit.subset_of(annihilator)) continue;
      if (!orbit.subset_of(above)) continue;
      if (!naive_eventual(step, complement, VertexSet::single(v), h[f])) continue;
      if (!h[f].contains(v))
        return reject("absorption fails at F=" + fmask_to_string(f) + ", witness " + d.carrier[v]);
    }
  }
  return true;
}

}  // namespace gilat::oracle
