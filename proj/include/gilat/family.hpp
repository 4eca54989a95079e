#pragma once

#include <optional>
#include <vector>

#include "gilat/base.hpp"
#include "gilat/kgraph.hpp"
#include "gilat/predicates.hpp"
#include "gilat/transfer.hpp"

namespace gilat {

/// 2^k-indexed family of vertex sets, component for F addressed by the bit
/// mask of F.
class TupleFamily {
 public:
  explicit TupleFamily(int rank) : rank_(rank), comps_(size_t{1} << rank) {
    if (rank < 1 || rank > kMaxRank) throw InputError("family rank out of range");
  }

  int rank() const { return rank_; }
  int size() const { return static_cast<int>(comps_.size()); }
  VertexSet& operator[](FMask f) { return comps_[f]; }
  const VertexSet& operator[](FMask f) const { return comps_[f]; }

  static TupleFamily constant(int rank, VertexSet s) {
    TupleFamily t(rank);
    for (auto& c : t.comps_) c = s;
    return t;
  }
  static TupleFamily all_empty(int rank) { return TupleFamily(rank); }
  static TupleFamily all_full(int rank, int n) { return constant(rank, VertexSet::full(n)); }

  bool subset_of(const TupleFamily& o) const {
    for (size_t f = 0; f < comps_.size(); ++f)
      if (!comps_[f].subset_of(o.comps_[f])) return false;
    return true;
  }

  friend bool operator==(const TupleFamily& a, const TupleFamily& b) { return a.comps_ == b.comps_; }
  friend bool operator!=(const TupleFamily& a, const TupleFamily& b) { return !(a == b); }

  /// Canonical order: lexicographic on component masks, F ascending.
  friend bool operator<(const TupleFamily& a, const TupleFamily& b) {
    for (size_t f = 0; f < a.comps_.size(); ++f) {
      if (a.comps_[f].bits() != b.comps_[f].bits()) return a.comps_[f].bits() < b.comps_[f].bits();
    }
    return false;
  }

 private:
  int rank_;
  std::vector<VertexSet> comps_;
};

/// Witness of a failed family predicate.
struct FamilyWitness {
  FMask f = 0;
  int color = -1;  // -1 when not color-specific
  int vertex = -1;
};

/// Hereditary family: each component is closed under the transfers of the
/// complementary colors. The least witness (F, color, vertex) is reported.
inline bool is_hereditary_family(const KGraph& g, const TupleFamily& h,
                                 FamilyWitness* witness = nullptr) {
  FMask all = (FMask{1} << g.rank()) - 1;
  for (FMask f = 0; f <= all; ++f) {
    for (int c = 0; c < g.rank(); ++c) {
      if (f & (FMask{1} << c)) continue;
      VertexSet leaked = g.step(c, h[f]) - h[f];
      if (!leaked.empty()) {
        if (witness) *witness = {f, c, leaked.first()};
        return false;
      }
    }
  }
  return true;
}

/// F1 subset of F2 implies component inclusion; covering pairs suffice.
inline bool is_partially_ordered(const TupleFamily& h, FamilyWitness* witness = nullptr) {
  FMask all = (FMask{1} << h.rank()) - 1;
  for (FMask f = 0; f <= all; ++f) {
    for (int c = 0; c < h.rank(); ++c) {
      if (f & (FMask{1} << c)) continue;
      FMask up = f | (FMask{1} << c);
      VertexSet leaked = h[f] - h[up];
      if (!leaked.empty()) {
        if (witness) *witness = {f, c, leaked.first()};
        return false;
      }
    }
  }
  return true;
}

/// Componentwise reachability closure under the complementary colors.
inline TupleFamily inv_closure(const KGraph& g, const TupleFamily& h) {
  TupleFamily out(h.rank());
  FMask all = (FMask{1} << h.rank()) - 1;
  for (FMask f = 0; f <= all; ++f) out[f] = reach_closure(g, all & ~f, h[f]);
  return out;
}

/// Component for F becomes the union of the components below F.
inline TupleFamily po_closure(const TupleFamily& h) {
  TupleFamily out = h;
  FMask all = (FMask{1} << h.rank()) - 1;
  for (int c = 0; c < h.rank(); ++c)
    for (FMask f = 0; f <= all; ++f)
      if (f & (FMask{1} << c)) out[f] = out[f] | out[f & ~(FMask{1} << c)];
  return out;
}

}  // namespace gilat
