#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gilat/base.hpp"
#include "gilat/kgraph.hpp"

namespace gilat {

inline constexpr int kDefaultPathDegreeCap = 24;
inline constexpr size_t kDefaultPathCountCap = size_t{1} << 20;

/// Path in color-nondecreasing normal form. The empty edge sequence is the
/// vertex path at `range`.
struct Path {
  int range = 0;
  std::vector<int> edges;

  int source(const KGraph& g) const { return edges.empty() ? range : g.edge(edges.back()).source; }

  Degree degree(const KGraph& g) const {
    Degree d(g.rank());
    for (int e : edges) d[g.edge(e).color]++;
    return d;
  }

  friend bool operator==(const Path& a, const Path& b) {
    return a.range == b.range && a.edges == b.edges;
  }
  friend bool operator<(const Path& a, const Path& b) {
    if (a.range != b.range) return a.range < b.range;
    return a.edges < b.edges;
  }

  std::string to_string(const KGraph& g) const {
    if (edges.empty()) return "(" + g.vertex_name(range) + ")";
    std::string s;
    for (size_t i = 0; i < edges.size(); ++i) {
      if (i) s += ".";
      s += g.edge(edges[i]).id;
    }
    return s;
  }
};

inline Path vertex_path(int v) { return Path{v, {}}; }

namespace detail {

inline void check_composable(const KGraph& g, const std::vector<int>& word) {
  for (size_t t = 0; t + 1 < word.size(); ++t)
    if (g.edge(word[t]).source != g.edge(word[t + 1]).range)
      throw InputError("edges " + g.edge(word[t]).id + " and " + g.edge(word[t + 1]).id +
                       " are not composable");
}

// Replace the adjacent pair at position t by its square partner.
inline void swap_at(const KGraph& g, std::vector<int>& word, size_t t) {
  auto [a, b] = g.swapped(word[t], word[t + 1]);
  word[t] = a;
  word[t + 1] = b;
}

// Move the leftmost edge of the given color to the front by square swaps;
// the word must contain one.
inline void rotate_color_to_front(const KGraph& g, std::vector<int>& word, int color) {
  size_t p = 0;
  while (p < word.size() && g.edge(word[p]).color != color) ++p;
  if (p == word.size()) throw std::logic_error("rotate_color_to_front: color not present");
  for (size_t t = p; t > 0; --t) swap_at(g, word, t - 1);
}

}  // namespace detail

/// Color-nondecreasing normal form of a composable edge word. Bubble
/// rewriting through the square table; the inversion count strictly drops
/// at each swap, and the cube condition makes the result independent of
/// the swap order.
inline Path normalize(const KGraph& g, int range_if_empty, std::vector<int> word) {
  detail::check_composable(g, word);
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (size_t t = 0; t + 1 < word.size(); ++t) {
      if (g.edge(word[t]).color > g.edge(word[t + 1]).color) {
        detail::swap_at(g, word, t);
        swapped = true;
      }
    }
  }
  int range = word.empty() ? range_if_empty : g.edge(word.front()).range;
  return Path{range, std::move(word)};
}

inline Path normalize(const KGraph& g, const std::vector<int>& word) {
  if (word.empty()) throw InputError("normalize of an empty word needs a base vertex");
  return normalize(g, g.edge(word.front()).range, word);
}

inline Path compose(const KGraph& g, const Path& a, const Path& b) {
  if (a.source(g) != b.range)
    throw InputError("compose: source/range mismatch");
  std::vector<int> word = a.edges;
  word.insert(word.end(), b.edges.begin(), b.edges.end());
  return normalize(g, a.range, std::move(word));
}

/// Split off the unique prefix of the given degree: path = prefix . rest.
inline std::pair<Path, Path> prefix_split(const KGraph& g, const Path& p, const Degree& n) {
  Degree d = p.degree(g);
  if (!(Degree::zero(g.rank()) <= n) || !(n <= d))
    throw InputError("prefix degree out of bounds");
  std::vector<int> word = p.edges;
  std::vector<int> prefix;
  for (int c = 0; c < g.rank(); ++c) {
    for (int t = 0; t < n[c]; ++t) {
      detail::rotate_color_to_front(g, word, c);
      prefix.push_back(word.front());
      word.erase(word.begin());
    }
  }
  Path head = normalize(g, p.range, std::move(prefix));
  Path tail = normalize(g, head.source(g), std::move(word));
  return {std::move(head), std::move(tail)};
}

/// The middle factor p(l, m) of the factorisation p = p(0,l) p(l,m) p(m,d).
inline Path segment(const KGraph& g, const Path& p, const Degree& l, const Degree& m) {
  Degree d = p.degree(g);
  if (!(Degree::zero(g.rank()) <= l) || !(l <= m) || !(m <= d))
    throw InputError("segment degrees out of bounds");
  auto [head, rest] = prefix_split(g, p, m);
  (void)rest;
  auto [front, mid] = prefix_split(g, head, l);
  (void)front;
  return mid;
}

/// All paths with range v and exact degree n, in normal form. Generated
/// color by color, so each path appears exactly once.
inline std::vector<Path> paths_from(const KGraph& g, int v, const Degree& n,
                                    int degree_cap = kDefaultPathDegreeCap,
                                    size_t count_cap = kDefaultPathCountCap) {
  if (n.total() > degree_cap)
    throw ResourceError("path enumeration degree " + std::to_string(n.total()) +
                        " exceeds cap " + std::to_string(degree_cap));
  std::vector<Path> out;
  std::vector<int> word;
  auto rec = [&](auto&& self, int cur, Degree left) -> void {
    if (left.is_zero()) {
      if (out.size() >= count_cap) throw ResourceError("path enumeration exceeds count cap");
      out.push_back(Path{v, word});
      return;
    }
    int c = 0;
    while (left[c] == 0) ++c;
    Degree next = left;
    next[c]--;
    for (int e : g.out_edges(c, cur)) {
      word.push_back(e);
      self(self, g.edge(e).source, next);
      word.pop_back();
    }
  };
  rec(rec, v, n);
  return out;
}

/// Sources of the degree-n paths out of S.
inline VertexSet source_set_steps(const KGraph& g, VertexSet s, const Degree& n) {
  VertexSet cur = s;
  for (int c = 0; c < g.rank(); ++c)
    for (int t = 0; t < n[c]; ++t) cur = g.step(c, cur);
  return cur;
}

/// Minimal common extensions of mu and nu.
inline std::vector<Path> mce(const KGraph& g, const Path& mu, const Path& nu) {
  std::vector<Path> out;
  if (mu.range != nu.range) return out;
  Degree target = Degree::join(mu.degree(g), nu.degree(g));
  for (const Path& lambda : paths_from(g, mu.range, target)) {
    if (segment(g, lambda, Degree::zero(g.rank()), mu.degree(g)) == mu &&
        segment(g, lambda, Degree::zero(g.rank()), nu.degree(g)) == nu)
      out.push_back(lambda);
  }
  return out;
}

/// Pairs (alpha, beta) with mu.alpha = nu.beta in MCE(mu, nu).
inline std::vector<std::pair<Path, Path>> lambda_min(const KGraph& g, const Path& mu,
                                                     const Path& nu) {
  std::vector<std::pair<Path, Path>> out;
  Degree dm = mu.degree(g), dn = nu.degree(g);
  Degree target = Degree::join(dm, dn);
  for (const Path& lambda : mce(g, mu, nu))
    out.emplace_back(segment(g, lambda, dm, target), segment(g, lambda, dn, target));
  return out;
}

}  // namespace gilat
