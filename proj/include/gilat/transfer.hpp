#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "gilat/base.hpp"
#include "gilat/kgraph.hpp"

namespace gilat {

inline constexpr size_t kOrbitCap = size_t{1} << 20;
inline constexpr uint64_t kPeriodCap = uint64_t{1} << 20;
inline constexpr uint64_t kResidueCap = uint64_t{1} << 22;

/// k commuting union-additive self-maps of the powerset of a finite vertex
/// set, given by their values on singletons.
class TransferSystem {
 public:
  TransferSystem(int rank, int n, std::vector<std::vector<VertexSet>> singles)
      : rank_(rank), n_(n), singles_(std::move(singles)) {
    if (rank_ < 1 || rank_ > kMaxRank) throw InputError("transfer system rank out of range");
  }

  static TransferSystem from_graph(const KGraph& g) {
    std::vector<std::vector<VertexSet>> singles(g.rank(), std::vector<VertexSet>(g.vertex_count()));
    for (int c = 0; c < g.rank(); ++c)
      for (int v = 0; v < g.vertex_count(); ++v) singles[c][v] = g.step(c, VertexSet::single(v));
    TransferSystem t(g.rank(), g.vertex_count(), std::move(singles));
    FMask all = (FMask{1} << g.rank()) - 1;
    if (!t.commute(all)) throw std::logic_error("transfer maps of a valid graph must commute");
    return t;
  }

  int rank() const { return rank_; }
  int vertex_count() const { return n_; }

  VertexSet apply(int color, VertexSet s) const {
    VertexSet out;
    s.for_each([&](int v) { out = out | singles_[color][v]; });
    return out;
  }

  VertexSet apply(const Degree& n, VertexSet s) const {
    VertexSet cur = s;
    for (int c = 0; c < rank_; ++c)
      for (int t = 0; t < n[c]; ++t) cur = apply(c, cur);
    return cur;
  }

  /// Closure of S under the maps of the given colors (the n = 0 term keeps
  /// S itself).
  VertexSet reach(FMask active, VertexSet s) const {
    VertexSet cur = s;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int c : fmask_colors(active)) {
        VertexSet next = cur | apply(c, cur);
        if (next != cur) {
          cur = next;
          grew = true;
        }
      }
    }
    return cur;
  }

  /// Union-additivity makes singleton checks sufficient.
  bool commute(FMask active) const {
    auto colors = fmask_colors(active);
    for (size_t a = 0; a < colors.size(); ++a)
      for (size_t b = a + 1; b < colors.size(); ++b)
        for (int v = 0; v < n_; ++v) {
          VertexSet s = VertexSet::single(v);
          if (apply(colors[a], apply(colors[b], s)) != apply(colors[b], apply(colors[a], s)))
            return false;
        }
    return true;
  }

 private:
  int rank_;
  int n_;
  std::vector<std::vector<VertexSet>> singles_;  // [color][vertex]
};

inline TransferSystem transfer_system(const KGraph& g) { return TransferSystem::from_graph(g); }

/// Sources of the degree-n paths out of S, through the transfer system.
inline VertexSet source_set(const KGraph& g, VertexSet s, const Degree& n) {
  return transfer_system(g).apply(n, s);
}

/// Index/period data of the active generators on the orbit of one start
/// state: t_i^(r_i + q_i) = t_i^(r_i) as self-maps of the orbit, with r_i
/// and q_i minimal.
struct EventualBehavior {
  std::vector<int> colors;       // active colors, ascending
  std::vector<uint64_t> index;   // r_i per active color
  std::vector<uint64_t> period;  // q_i per active color
  std::vector<VertexSet> orbit;  // reachable states, start first

  uint64_t index_of(int color) const {
    for (size_t i = 0; i < colors.size(); ++i)
      if (colors[i] == color) return index[i];
    return 0;
  }
  uint64_t period_of(int color) const {
    for (size_t i = 0; i < colors.size(); ++i)
      if (colors[i] == color) return period[i];
    return 1;
  }
};

namespace detail {

// Tail length and cycle length of every node of a functional graph.
struct FunctionalOrbit {
  std::vector<uint64_t> tail;
  std::vector<uint64_t> cycle;
};

inline FunctionalOrbit analyze_functional(const std::vector<int>& next) {
  size_t n = next.size();
  FunctionalOrbit out{std::vector<uint64_t>(n, 0), std::vector<uint64_t>(n, 0)};
  std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
  for (size_t s = 0; s < n; ++s) {
    if (state[s] != 0) continue;
    std::vector<int> stack;
    std::map<int, size_t> pos;
    int cur = static_cast<int>(s);
    while (state[cur] == 0) {
      state[cur] = 1;
      pos[cur] = stack.size();
      stack.push_back(cur);
      cur = next[cur];
    }
    size_t resolved_from;
    if (state[cur] == 1) {
      // Found a new cycle inside the stack.
      size_t start = pos[cur];
      uint64_t len = stack.size() - start;
      for (size_t i = start; i < stack.size(); ++i) {
        out.tail[stack[i]] = 0;
        out.cycle[stack[i]] = len;
        state[stack[i]] = 2;
      }
      resolved_from = start;
    } else {
      resolved_from = stack.size();
    }
    // Unwind the tail part.
    for (size_t i = resolved_from; i-- > 0;) {
      int v = stack[i];
      out.tail[v] = out.tail[next[v]] + 1;
      out.cycle[v] = out.cycle[next[v]];
      state[v] = 2;
    }
  }
  return out;
}

inline uint64_t lcm_capped(uint64_t a, uint64_t b) {
  uint64_t g = std::gcd(a, b);
  uint64_t l = a / g;
  if (l > kPeriodCap / b) throw ResourceError("transfer period exceeds cap");
  return l * b;
}

}  // namespace detail

inline EventualBehavior eventual_behavior(const TransferSystem& t, FMask active, VertexSet start) {
  if (!t.commute(active)) throw InputError("transfer maps do not commute on the active colors");
  EventualBehavior eb;
  eb.colors = fmask_colors(active);

  // Orbit of the start state under the active generators.
  std::map<uint64_t, int> id_of;
  std::vector<VertexSet> states;
  states.push_back(start);
  id_of[start.bits()] = 0;
  for (size_t head = 0; head < states.size(); ++head) {
    for (int c : eb.colors) {
      VertexSet nxt = t.apply(c, states[head]);
      if (id_of.emplace(nxt.bits(), static_cast<int>(states.size())).second) {
        states.push_back(nxt);
        if (states.size() > kOrbitCap) throw ResourceError("transfer orbit exceeds cap");
      }
    }
  }
  eb.orbit = states;

  for (int c : eb.colors) {
    std::vector<int> next(states.size());
    for (size_t i = 0; i < states.size(); ++i) next[i] = id_of.at(t.apply(c, states[i]).bits());
    auto fo = detail::analyze_functional(next);
    uint64_t r = 0, q = 1;
    for (size_t i = 0; i < states.size(); ++i) {
      r = std::max(r, fo.tail[i]);
      q = detail::lcm_capped(q, fo.cycle[i]);
    }
    eb.index.push_back(r);
    eb.period.push_back(q);
  }
  return eb;
}

/// Decides: is there m supported on the active colors with T^n(start)
/// inside target for every n >= m supported on the active colors?
///
/// By commutativity T^n = T^(r + ((n - r) mod q)) componentwise beyond the
/// index, so the infinite quantifier reduces to one sweep of residues.
inline bool eventual_containment(const TransferSystem& t, FMask active, VertexSet start,
                                 VertexSet target) {
  if (active == 0) return start.subset_of(target);
  EventualBehavior eb = eventual_behavior(t, active, start);

  uint64_t combos = 1;
  for (uint64_t q : eb.period) {
    if (combos > kResidueCap / q) throw ResourceError("residue box exceeds cap");
    combos *= q;
  }

  // Walk by orbit index; states were enumerated by eventual_behavior.
  size_t na = eb.colors.size();
  std::map<uint64_t, int> id_of;
  for (size_t i = 0; i < eb.orbit.size(); ++i) id_of[eb.orbit[i].bits()] = static_cast<int>(i);
  std::vector<std::vector<int>> next(na, std::vector<int>(eb.orbit.size()));
  for (size_t i = 0; i < na; ++i)
    for (size_t s = 0; s < eb.orbit.size(); ++s)
      next[i][s] = id_of.at(t.apply(eb.colors[i], eb.orbit[s]).bits());

  std::vector<uint64_t> residue(na, 0);
  while (true) {
    int cur = 0;  // start state
    for (size_t i = 0; i < na; ++i) {
      uint64_t steps = eb.index[i] + residue[i];
      for (uint64_t s = 0; s < steps; ++s) cur = next[i][cur];
    }
    if (!eb.orbit[cur].subset_of(target)) return false;
    size_t i = 0;
    while (i < na && ++residue[i] == eb.period[i]) {
      residue[i] = 0;
      ++i;
    }
    if (i == na) break;
  }
  return true;
}

}  // namespace gilat
