#pragma once

#include <map>
#include <string>
#include <vector>

#include "gilat/base.hpp"
#include "gilat/family.hpp"
#include "gilat/nt.hpp"
#include "gilat/transfer.hpp"

namespace gilat {

/// d commuting partial self-maps of a finite carrier. maps[color][v] is
/// the image point or -1 when undefined.
struct DynSys {
  int rank = 1;
  std::vector<std::string> carrier;
  std::vector<std::vector<int>> maps;

  int point_count() const { return static_cast<int>(carrier.size()); }

  std::optional<int> find_point(const std::string& name) const {
    for (int v = 0; v < point_count(); ++v)
      if (carrier[v] == name) return v;
    return std::nullopt;
  }

  bool defined(int color, int v) const { return maps[color][v] >= 0; }

  /// Composite partial map along both colors; -1 when the chain breaks.
  int composite(int first, int second, int v) const {
    int w = maps[first][v];
    return w < 0 ? -1 : maps[second][w];
  }
};

struct DynViolation {
  int color_a, color_b, point;
  std::string message;
};

struct DynValidationReport {
  std::vector<DynViolation> violations;
  bool ok() const { return violations.empty(); }
};

inline DynSys make_dynsys(int rank, std::vector<std::string> carrier,
                          std::vector<std::vector<int>> maps) {
  if (rank < 1 || rank > kMaxRank) throw InputError("dynsys rank out of range");
  if (static_cast<int>(carrier.size()) > kMaxVertices)
    throw InputError("carrier too large");
  if (static_cast<int>(maps.size()) != rank) throw InputError("one map per color required");
  for (auto& m : maps) {
    if (m.size() != carrier.size()) throw InputError("map size mismatch");
    for (int img : m)
      if (img < -1 || img >= static_cast<int>(carrier.size()))
        throw InputError("map image out of range");
  }
  return DynSys{rank, std::move(carrier), std::move(maps)};
}

/// Commutativity as partial maps: both composites defined and equal, or
/// both undefined, at every point.
inline DynValidationReport validate_dynsys(const DynSys& d) {
  DynValidationReport rep;
  for (int i = 0; i < d.rank; ++i)
    for (int j = i + 1; j < d.rank; ++j)
      for (int v = 0; v < d.point_count(); ++v) {
        int a = d.composite(i, j, v);
        int b = d.composite(j, i, v);
        if (a != b)
          rep.violations.push_back({i, j, v,
                                    "maps " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                        " do not commute at " + d.carrier[v]});
      }
  return rep;
}

/// Transfer by preimages: T_i(S) = sigma_i^{-1}(S).
inline TransferSystem dyn_transfer(const DynSys& d) {
  if (!validate_dynsys(d).ok()) throw InputError("dyn_transfer requires a valid system");
  std::vector<std::vector<VertexSet>> singles(d.rank, std::vector<VertexSet>(d.point_count()));
  for (int c = 0; c < d.rank; ++c)
    for (int v = 0; v < d.point_count(); ++v)
      if (d.maps[c][v] >= 0) singles[c][d.maps[c][v]].add(v);
  return TransferSystem(d.rank, d.point_count(), std::move(singles));
}

namespace detail {

inline NtDiagnostics dyn_fail(const DynSys& d, int condition, FMask f, int point, int color = -1) {
  static const char* roman[] = {"", "(i)", "(ii)", "(iii)", "(iv)"};
  NtDiagnostics out;
  out.ok = false;
  out.condition = condition;
  out.f = f;
  out.vertex = point;
  out.color = color;
  out.message = "condition " + std::string(roman[condition]) + " fails at F=" + fmask_to_string(f);
  if (color >= 0) out.message += ", color " + std::to_string(color + 1);
  out.message += ", witness " + (point >= 0 ? d.carrier[point] : std::string("?"));
  return out;
}

}  // namespace detail

/// NT decision for commutative dynamics: annihilator bound, preimage
/// invariance, partial order, and the absorption inclusion.
inline bool dyn_is_nt_tuple(const DynSys& d, const TupleFamily& h, NtDiagnostics* diag = nullptr) {
  NtDiagnostics local;
  NtDiagnostics& out = diag ? *diag : local;
  out = NtDiagnostics{};
  if (h.rank() != d.rank) throw InputError("family rank mismatch");
  VertexSet carrier = VertexSet::full(d.point_count());
  for (FMask f = 0; f < static_cast<FMask>(h.size()); ++f)
    if (!h[f].subset_of(carrier)) throw InputError("family component mentions undeclared points");
  if (!validate_dynsys(d).ok()) throw InputError("dyn_is_nt_tuple requires a valid system");
  TransferSystem t = dyn_transfer(d);
  FMask all = (FMask{1} << d.rank) - 1;
  int n = d.point_count();

  // w[f] = points whose one-step preimages along every color of F land in
  // the bottom component.
  std::vector<VertexSet> w(size_t{1} << d.rank);
  for (FMask f = 1; f <= all; ++f) {
    VertexSet set;
    for (int v = 0; v < n; ++v) {
      bool in = true;
      for (int c : fmask_colors(f))
        if (!t.apply(c, VertexSet::single(v)).subset_of(h[0])) in = false;
      if (in) set.add(v);
    }
    w[f] = set;
  }

  for (FMask f = 1; f <= all; ++f) {
    VertexSet excess = (h[f] & w[f]) - h[0];
    if (!excess.empty()) {
      out = detail::dyn_fail(d, 1, f, excess.first());
      return false;
    }
  }

  for (FMask f = 0; f <= all; ++f)
    for (int c = 0; c < d.rank; ++c) {
      if (f & (FMask{1} << c)) continue;
      VertexSet leaked = t.apply(c, h[f]) - h[f];
      if (!leaked.empty()) {
        out = detail::dyn_fail(d, 2, f, leaked.first(), c);
        return false;
      }
    }

  FamilyWitness fw;
  if (!is_partially_ordered(h, &fw)) {
    out = detail::dyn_fail(d, 3, fw.f, fw.vertex, fw.color);
    return false;
  }

  for (FMask f = 1; f < all; ++f) {
    FMask complement = all & ~f;
    VertexSet annihilator = h[0] | (VertexSet::full(n) - w[f]);
    VertexSet above = VertexSet::full(n);
    for (FMask s : strict_supersets(f, d.rank)) above = above & h[s];
    VertexSet i123;
    for (int v = 0; v < n; ++v) {
      VertexSet orbit = t.reach(complement, VertexSet::single(v));
      if (!orbit.subset_of(annihilator)) continue;
      if (!orbit.subset_of(above)) continue;
      if (!eventual_containment(t, complement, VertexSet::single(v), h[f])) continue;
      i123.add(v);
    }
    VertexSet excess = i123 - h[f];
    if (!excess.empty()) {
      out = detail::dyn_fail(d, 4, f, excess.first());
      return false;
    }
  }
  return true;
}

/// For surjective systems: subsets invariant under images and preimages of
/// every map; these are the bottoms of the NO-families (upper components
/// full).
inline std::vector<VertexSet> dyn_invariant_subsets(const DynSys& d) {
  if (!validate_dynsys(d).ok()) throw InputError("dyn_invariant_subsets requires a valid system");
  int n = d.point_count();
  TransferSystem t = dyn_transfer(d);
  for (int c = 0; c < d.rank; ++c)
    for (int v = 0; v < n; ++v)
      if (t.apply(c, VertexSet::single(v)).empty())
        throw InputError("dyn_invariant_subsets requires surjective maps (no preimage at " +
                         d.carrier[v] + ")");
  if (n > 20) throw ResourceError("carrier too large for subset enumeration");
  std::vector<VertexSet> out;
  for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
    VertexSet h(bits);
    bool good = true;
    for (int c = 0; c < d.rank && good; ++c) {
      if (!t.apply(c, h).subset_of(h)) good = false;  // preimage invariance
      for (int v = 0; v < n && good; ++v)
        if (t.apply(c, VertexSet::single(v)).subset_of(h) && !h.contains(v)) good = false;
    }
    if (good) out.push_back(h);
  }
  return out;
}

}  // namespace gilat
