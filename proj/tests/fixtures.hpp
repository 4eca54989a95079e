#pragma once

#include <random>
#include <vector>

#include "gilat/corpus.hpp"
#include "gilat/family.hpp"
#include "gilat/kgraph.hpp"
#include "gilat/paths.hpp"

namespace fixtures {

using namespace gilat;

/// One vertex with a loop in every color and the commuting squares.
inline KGraph fx1(int k) {
  std::vector<Edge> edges;
  for (int c = 0; c < k; ++c) edges.push_back({"l" + std::to_string(c + 1), c, 0, 0});
  std::vector<Square> squares;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) squares.push_back({i, j, j, i});
  return KGraph(k, {"v"}, std::move(edges), std::move(squares));
}

/// Rank one, a single edge u -> w (so s(e) = w).
inline KGraph fx2() {
  return KGraph(1, {"u", "w"}, {{"e", 0, 0, 1}}, {});
}

/// Rank two on vertices u,w: color-1 loops b@u and a@w, color-2 edge
/// g: u -> w and loop h@w, squares b.g = g.a and a.h = h.a.
inline KGraph fx3() {
  std::vector<Edge> edges{{"b", 0, 0, 0}, {"a", 0, 1, 1}, {"g", 1, 0, 1}, {"h", 1, 1, 1}};
  std::vector<Square> squares{{0, 2, 2, 1}, {1, 3, 3, 1}};
  return KGraph(2, {"u", "w"}, std::move(edges), std::move(squares));
}

inline VertexSet vs(std::initializer_list<int> vertices) {
  VertexSet out;
  for (int v : vertices) out.add(v);
  return out;
}

/// Family on a rank-2 graph given as (empty, {1}, {2}, {1,2}) components.
inline TupleFamily fam2(VertexSet h0, VertexSet h1, VertexSet h2, VertexSet h12) {
  TupleFamily fam(2);
  fam[0b00] = h0;
  fam[0b01] = h1;
  fam[0b10] = h2;
  fam[0b11] = h12;
  return fam;
}

inline TupleFamily fam1(VertexSet h0, VertexSet h1) {
  TupleFamily fam(1);
  fam[0] = h0;
  fam[1] = h1;
  return fam;
}

/// Test-side rewriting: applies square swaps at randomly chosen inversions
/// until sorted, independent of the production bubble order.
inline Path normalize_random_order(const KGraph& g, std::vector<int> word, std::mt19937_64& rng) {
  int range = word.empty() ? 0 : g.edge(word.front()).range;
  while (true) {
    std::vector<size_t> spots;
    for (size_t t = 0; t + 1 < word.size(); ++t)
      if (g.edge(word[t]).color > g.edge(word[t + 1]).color) spots.push_back(t);
    if (spots.empty()) break;
    size_t t = spots[std::uniform_int_distribution<size_t>(0, spots.size() - 1)(rng)];
    auto [a, b] = g.swapped(word[t], word[t + 1]);
    word[t] = a;
    word[t + 1] = b;
  }
  if (!word.empty()) range = g.edge(word.front()).range;
  return Path{range, word};
}

/// Composable random word out of a vertex.
inline std::vector<int> random_word(const KGraph& g, std::mt19937_64& rng, int max_len = 5) {
  std::vector<int> word;
  if (g.vertex_count() == 0) return word;
  int v = std::uniform_int_distribution<int>(0, g.vertex_count() - 1)(rng);
  int len = std::uniform_int_distribution<int>(0, max_len)(rng);
  for (int t = 0; t < len; ++t) {
    std::vector<int> options;
    for (int c = 0; c < g.rank(); ++c)
      for (int e : g.out_edges(c, v)) options.push_back(e);
    if (options.empty()) break;
    int e = options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(rng)];
    word.push_back(e);
    v = g.edge(e).source;
  }
  return word;
}

}  // namespace fixtures
