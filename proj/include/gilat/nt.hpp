#pragma once

#include <string>
#include <vector>

#include "gilat/base.hpp"
#include "gilat/family.hpp"
#include "gilat/kgraph.hpp"
#include "gilat/predicates.hpp"
#include "gilat/transfer.hpp"

namespace gilat {

/// Outcome of a tuple decision, with the first failing condition and the
/// least witness.
struct NtDiagnostics {
  bool ok = true;
  int condition = 0;  // 1..4 on failure; 5 = tracing containment (NO); 6 = relative containment
  FMask f = 0;
  int vertex = -1;
  int color = -1;
  std::string message;
};

namespace detail {

inline std::string vertex_label(const KGraph& g, int v) {
  return v >= 0 ? g.vertex_name(v) : std::string("?");
}

inline void require_within(const KGraph& g, const TupleFamily& h) {
  if (h.rank() != g.rank()) throw InputError("family rank does not match the graph");
  VertexSet full = VertexSet::full(g.vertex_count());
  for (FMask f = 0; f < static_cast<FMask>(h.size()); ++f)
    if (!h[f].subset_of(full)) throw InputError("family component mentions undeclared vertices");
}

inline NtDiagnostics fail(const KGraph& g, int condition, FMask f, int vertex, int color = -1) {
  static const char* roman[] = {"", "(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)"};
  NtDiagnostics d;
  d.ok = false;
  d.condition = condition;
  d.f = f;
  d.vertex = vertex;
  d.color = color;
  d.message = "condition " + std::string(roman[condition]) + " fails at F=" + fmask_to_string(f);
  if (color >= 0) d.message += ", color " + std::to_string(color + 1);
  d.message += ", witness " + vertex_label(g, vertex);
  return d;
}

}  // namespace detail

struct RfConditionSets {
  VertexSet h1, h2, h3;
};

/// The three sets whose intersection the F-component must absorb: orbits
/// staying in the covariance target, orbits staying above F, and eventual
/// containment in the F-component itself.
inline RfConditionSets rf_condition_sets(const KGraph& g, const TransferSystem& t,
                                         const TupleFamily& h, FMask f) {
  FMask all = (FMask{1} << g.rank()) - 1;
  if (f == 0 || f == all) throw InputError("F must be a proper nonempty color set");
  if (!is_hereditary(g, h[0])) throw InputError("the empty-set component must be hereditary");
  FMask complement = all & ~f;
  VertexSet jf = jf_vertices(g, f, h[0]);
  VertexSet above = VertexSet::full(g.vertex_count());
  for (FMask d : strict_supersets(f, g.rank())) above = above & h[d];
  RfConditionSets out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    VertexSet orbit = reach_closure(g, complement, VertexSet::single(v));
    if (orbit.subset_of(jf)) out.h1.add(v);
    if (orbit.subset_of(above)) out.h2.add(v);
    if (eventual_containment(t, complement, VertexSet::single(v), h[f])) out.h3.add(v);
  }
  return out;
}

inline RfConditionSets rf_condition_sets(const KGraph& g, const TupleFamily& h, FMask f) {
  return rf_condition_sets(g, transfer_system(g), h, f);
}

/// NT decision via the row-finite characterisation: covariance bound,
/// hereditary, partially ordered, and the absorption inclusion for every
/// proper nonempty F.
inline bool is_nt_tuple(const KGraph& g, const TupleFamily& h, NtDiagnostics* diag = nullptr) {
  detail::require_within(g, h);
  NtDiagnostics local;
  NtDiagnostics& d = diag ? *diag : local;
  d = NtDiagnostics{};
  FMask all = (FMask{1} << g.rank()) - 1;

  // The empty-set component must be hereditary before the covariance
  // targets make sense; this is part of condition (ii).
  for (int c = 0; c < g.rank(); ++c) {
    VertexSet leaked = g.step(c, h[0]) - h[0];
    if (!leaked.empty()) {
      d = detail::fail(g, 2, 0, leaked.first(), c);
      return false;
    }
  }

  for (FMask f = 1; f <= all; ++f) {
    VertexSet excess = h[f] - jf_vertices(g, f, h[0]);
    if (!excess.empty()) {
      d = detail::fail(g, 1, f, excess.first());
      return false;
    }
  }

  FamilyWitness w;
  if (!is_hereditary_family(g, h, &w)) {
    d = detail::fail(g, 2, w.f, w.vertex, w.color);
    return false;
  }
  if (!is_partially_ordered(h, &w)) {
    d = detail::fail(g, 3, w.f, w.vertex, w.color);
    return false;
  }

  TransferSystem t = transfer_system(g);
  for (FMask f = 1; f < all; ++f) {
    RfConditionSets sets = rf_condition_sets(g, t, h, f);
    VertexSet excess = (sets.h1 & sets.h2 & sets.h3) - h[f];
    if (!excess.empty()) {
      d = detail::fail(g, 4, f, excess.first());
      return false;
    }
  }
  return true;
}

/// NO decision: NT plus all tracing vertices absorbed.
inline bool is_no_tuple(const KGraph& g, const TupleFamily& h, NtDiagnostics* diag = nullptr) {
  NtDiagnostics local;
  NtDiagnostics& d = diag ? *diag : local;
  if (!is_nt_tuple(g, h, &d)) return false;
  FMask all = (FMask{1} << g.rank()) - 1;
  for (FMask f = 1; f <= all; ++f) {
    VertexSet missing = f_tracing(g, f) - h[f];
    if (!missing.empty()) {
      d = detail::fail(g, 5, f, missing.first());
      d.message = "tracing vertex outside component at F=" + fmask_to_string(f) + ", witness " +
                  detail::vertex_label(g, missing.first());
      return false;
    }
  }
  return true;
}

/// K-relative NO decision: NT plus componentwise containment of K.
inline bool is_relative_no_tuple(const KGraph& g, const TupleFamily& h, const TupleFamily& k,
                                 NtDiagnostics* diag = nullptr) {
  NtDiagnostics local;
  NtDiagnostics& d = diag ? *diag : local;
  if (k.rank() != g.rank()) throw InputError("relative family rank mismatch");
  if (!is_nt_tuple(g, h, &d)) return false;
  FMask all = (FMask{1} << g.rank()) - 1;
  for (FMask f = 0; f <= all; ++f) {
    VertexSet missing = k[f] - h[f];
    if (!missing.empty()) {
      d = detail::fail(g, 6, f, missing.first());
      d.message = "relative component not contained at F=" + fmask_to_string(f) + ", witness " +
                  detail::vertex_label(g, missing.first());
      return false;
    }
  }
  return true;
}

namespace detail {

inline void require_e_family(const KGraph& g, const TupleFamily& h) {
  FMask all = (FMask{1} << g.rank()) - 1;
  if (!h[0].empty())
    throw InputError("not an (E)-family: empty-set component must be empty, offending vertex " +
                     g.vertex_name(h[0].first()));
  for (FMask f = 1; f <= all; ++f) {
    VertexSet excess = h[f] - f_tracing(g, f);
    if (!excess.empty())
      throw InputError("not an (E)-family: non-tracing vertex " + g.vertex_name(excess.first()) +
                       " in component F=" + fmask_to_string(f));
  }
  FamilyWitness w;
  if (!is_hereditary_family(g, h, &w))
    throw InputError("not an (E)-family input: not hereditary, witness " + vertex_label(g, w.vertex) +
                     " at F=" + fmask_to_string(w.f));
  if (!is_partially_ordered(h, &w))
    throw InputError("not an (E)-family input: not partially ordered, witness " +
                     vertex_label(g, w.vertex) + " at F=" + fmask_to_string(w.f));
}

}  // namespace detail

/// One application of the maximalisation step to an (E)-family that is
/// hereditary and partially ordered. The proper components become
/// tracing-and-invariant-and-eventually-contained; top and bottom are
/// untouched.
inline TupleFamily iterate_once(const KGraph& g, const TupleFamily& h) {
  detail::require_within(g, h);
  detail::require_e_family(g, h);
  FMask all = (FMask{1} << g.rank()) - 1;
  TransferSystem t = transfer_system(g);
  TupleFamily out(g.rank());
  out[all] = h[all];
  for (FMask f = 1; f < all; ++f) {
    FMask complement = all & ~f;
    VertexSet above = VertexSet::full(g.vertex_count());
    for (FMask d : strict_supersets(f, g.rank())) above = above & h[d];
    VertexSet tracing = f_tracing(g, f);
    VertexSet comp;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!tracing.contains(v)) continue;
      if (!reach_closure(g, complement, VertexSet::single(v)).subset_of(above)) continue;
      if (!eventual_containment(t, complement, VertexSet::single(v), h[f])) continue;
      comp.add(v);
    }
    out[f] = comp;
  }
  return out;
}

/// Maximalisation with an explicit iteration count (rank-1 is the proven
/// stabilisation bound; tests exercise larger counts).
inline TupleFamily maximalise_iterations(const KGraph& g, const TupleFamily& h, int iterations) {
  detail::require_within(g, h);
  if (!is_hereditary(g, h[0])) throw InputError("maximalise: empty-set component must be hereditary");
  FMask all = (FMask{1} << g.rank()) - 1;
  QuotientResult q = quotient_graph_with_map(g, h[0]);
  const KGraph& quo = q.graph;

  TupleFamily reduced(g.rank());
  for (FMask f = 1; f <= all; ++f) {
    reduced[f] = map_vertex_set(h[f] - h[0], q.old_to_new);
    VertexSet excess = reduced[f] - f_tracing(quo, f);
    if (!excess.empty())
      throw InputError("not relative/(E): vertex " + quo.vertex_name(excess.first()) +
                       " is not tracing off the empty-set component at F=" + fmask_to_string(f));
  }

  TupleFamily cur = po_closure(inv_closure(quo, reduced));
  for (int i = 0; i < iterations; ++i) cur = iterate_once(quo, cur);

  TupleFamily out(g.rank());
  out[0] = h[0];
  for (FMask f = 1; f <= all; ++f) out[f] = h[0] | unmap_vertex_set(cur[f], q.new_to_old);
  return out;
}

/// The unique maximal family inducing the same gauge-invariant ideal:
/// closures then rank-1 iterations in the quotient off the bottom
/// component.
inline TupleFamily maximalise(const KGraph& g, const TupleFamily& h) {
  return maximalise_iterations(g, h, g.rank() - 1);
}

/// Maximal-tuple test: empty bottom, covariance bound, hereditary,
/// partially ordered, and closedness under one iteration.
inline bool is_m_tuple(const KGraph& g, const TupleFamily& h, NtDiagnostics* diag = nullptr) {
  detail::require_within(g, h);
  NtDiagnostics local;
  NtDiagnostics& d = diag ? *diag : local;
  d = NtDiagnostics{};
  FMask all = (FMask{1} << g.rank()) - 1;
  if (!h[0].empty()) {
    d = detail::fail(g, 1, 0, h[0].first());
    d.message = "empty-set component must be empty, witness " + g.vertex_name(h[0].first());
    return false;
  }
  for (FMask f = 1; f <= all; ++f) {
    VertexSet excess = h[f] - jf_vertices(g, f, VertexSet{});
    if (!excess.empty()) {
      d = detail::fail(g, 1, f, excess.first());
      return false;
    }
  }
  FamilyWitness w;
  if (!is_hereditary_family(g, h, &w)) {
    d = detail::fail(g, 2, w.f, w.vertex, w.color);
    return false;
  }
  if (!is_partially_ordered(h, &w)) {
    d = detail::fail(g, 3, w.f, w.vertex, w.color);
    return false;
  }
  // Conditions so far make the family an (E)-family, so the iterate exists.
  TupleFamily once = iterate_once(g, h);
  for (FMask f = 0; f <= all; ++f) {
    VertexSet excess = once[f] - h[f];
    if (!excess.empty()) {
      d = detail::fail(g, 4, f, excess.first());
      return false;
    }
  }
  return true;
}

/// Negatively invariant: every tracing vertex whose one-step F-sources all
/// fall into H0 already lies in H0.
inline bool is_neg_invariant(const KGraph& g, VertexSet h0, FamilyWitness* witness = nullptr) {
  FMask all = (FMask{1} << g.rank()) - 1;
  for (FMask f = 1; f <= all; ++f) {
    VertexSet pulled;
    for (int v = 0; v < g.vertex_count(); ++v) {
      bool inside = true;
      for (int c : fmask_colors(f))
        if (!g.step(c, VertexSet::single(v)).subset_of(h0)) inside = false;
      if (inside) pulled.add(v);
    }
    VertexSet leaked = (f_tracing(g, f) & pulled) - h0;
    if (!leaked.empty()) {
      if (witness) *witness = {f, -1, leaked.first()};
      return false;
    }
  }
  return true;
}

/// A set occurs as the bottom component of an NO-family exactly when it is
/// hereditary and negatively invariant.
inline bool participates_in_no_tuple(const KGraph& g, VertexSet h0) {
  return is_hereditary(g, h0) && is_neg_invariant(g, h0);
}

}  // namespace gilat
