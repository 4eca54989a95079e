#pragma once

#include <random>
#include <string>
#include <vector>

#include "gilat/base.hpp"
#include "gilat/dynsys.hpp"
#include "gilat/family.hpp"
#include "gilat/kgraph.hpp"
#include "gilat/predicates.hpp"
#include "gilat/transfer.hpp"

// Seeded generators for test corpora. Graph generators only emit valid
// k-graphs: squares are built by construction, never guessed.

namespace gilat::corpus {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<std::string> numbered(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Any edge set is a valid 1-graph.
inline KGraph random_1graph(Rng& rng, int max_vertices = 4, int max_edges = 6) {
  int n = pick(rng, 1, max_vertices);
  int m = pick(rng, 0, max_edges);
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i)
    edges.push_back({"e" + std::to_string(i), 0, pick(rng, 0, n - 1), pick(rng, 0, n - 1)});
  return KGraph(1, numbered("v", n), std::move(edges), {});
}

/// Single vertex, random loop counts, squares by a random bijection of the
/// bicolored loop pairs. Any bijection yields a 2-graph.
inline KGraph random_single_vertex_2graph(Rng& rng, int max_loops = 3) {
  int m = pick(rng, 0, max_loops);
  int n = pick(rng, 0, max_loops);
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) edges.push_back({"a" + std::to_string(i), 0, 0, 0});
  for (int i = 0; i < n; ++i) edges.push_back({"b" + std::to_string(i), 1, 0, 0});
  std::vector<std::pair<int, int>> rights;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) rights.emplace_back(m + j, i);  // (b_j, a_i)
  std::shuffle(rights.begin(), rights.end(), rng);
  std::vector<Square> squares;
  int idx = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      auto [fp, ep] = rights[idx++];
      squares.push_back({i, m + j, fp, ep});
    }
  return KGraph(2, {"v"}, std::move(edges), std::move(squares));
}

/// 2-graph of a pair of commuting functions: one edge per color per
/// vertex, square (e1_v, e2_{f(v)}, e2_v, e1_{g(v)}).
inline KGraph function_2graph(const std::vector<int>& f, const std::vector<int>& g) {
  int n = static_cast<int>(f.size());
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back({"f" + std::to_string(v), 0, v, f[v]});
  for (int v = 0; v < n; ++v) edges.push_back({"g" + std::to_string(v), 1, v, g[v]});
  // f_v . g_{f(v)} = g_v . f_{g(v)}; both routes land on g(f(v)) = f(g(v)).
  std::vector<Square> squares;
  for (int v = 0; v < n; ++v) squares.push_back({v, n + f[v], n + v, g[v]});
  return KGraph(2, numbered("v", n), std::move(edges), std::move(squares));
}

inline KGraph random_function_2graph(Rng& rng, int max_vertices = 4) {
  int n = pick(rng, 1, max_vertices);
  std::vector<int> f(n), g(n);
  for (int v = 0; v < n; ++v) f[v] = pick(rng, 0, n - 1);
  for (int attempt = 0; attempt < 32; ++attempt) {
    for (int v = 0; v < n; ++v) g[v] = pick(rng, 0, n - 1);
    bool commute = true;
    for (int v = 0; v < n; ++v)
      if (f[g[v]] != g[f[v]]) commute = false;
    if (commute) return function_2graph(f, g);
  }
  // fall back to a power of f, which always commutes
  int e = pick(rng, 0, 2);
  for (int v = 0; v < n; ++v) {
    int w = v;
    for (int t = 0; t < e; ++t) w = f[w];
    g[v] = w;
  }
  return function_2graph(f, g);
}

/// Layered sparse k-graph: colored edges only from layer 0 into mutually
/// disjoint upper layers, so no bicolored path is composable and the
/// square table is empty. Source-rich, often not locally convex.
inline KGraph random_layered_kgraph(Rng& rng, int rank = 2, int max_roots = 2, int max_leaves = 2) {
  int roots = pick(rng, 1, max_roots);
  std::vector<std::string> names = numbered("r", roots);
  std::vector<Edge> edges;
  int leaf = 0;
  for (int c = 0; c < rank; ++c) {
    int leaves = pick(rng, 0, max_leaves);
    for (int l = 0; l < leaves; ++l) {
      names.push_back("x" + std::to_string(leaf));
      edges.push_back({"e" + std::to_string(leaf), c, pick(rng, 0, roots - 1),
                       static_cast<int>(names.size()) - 1});
      ++leaf;
    }
  }
  return KGraph(rank, std::move(names), std::move(edges), {});
}

/// Product of 1-graphs: one color per factor, canonical squares; the cube
/// condition holds because swaps act on disjoint coordinates.
inline KGraph product_of_1graphs(const std::vector<KGraph>& factors) {
  int rank = static_cast<int>(factors.size());
  std::vector<int> sizes;
  for (const KGraph& f : factors) sizes.push_back(f.vertex_count());
  // vertex index <-> coordinate tuple
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur(rank, 0);
  while (true) {
    tuples.push_back(cur);
    int i = 0;
    while (i < rank && ++cur[i] == sizes[i]) cur[i++] = 0;
    if (i == rank) break;
  }
  auto index_of = [&](const std::vector<int>& t) {
    int idx = 0, stride = 1;
    for (int i = 0; i < rank; ++i) {
      idx += t[i] * stride;
      stride *= sizes[i];
    }
    return idx;
  };
  std::vector<std::string> names;
  for (const auto& t : tuples) {
    std::string n;
    for (int i = 0; i < rank; ++i) n += (i ? "|" : "") + factors[i].vertex_name(t[i]);
    names.push_back(n);
  }
  // edge per (factor edge, tuple of other coordinates)
  std::vector<Edge> edges;
  std::map<std::pair<int, std::pair<int, int>>, int> edge_at;  // (color, (edge, base_vertex)) -> idx
  for (int c = 0; c < rank; ++c) {
    for (int e = 0; e < factors[c].edge_count(); ++e) {
      for (size_t t = 0; t < tuples.size(); ++t) {
        if (tuples[t][c] != factors[c].edge(e).range) continue;
        std::vector<int> src = tuples[t];
        src[c] = factors[c].edge(e).source;
        std::string id = factors[c].edge(e).id + "@" + std::to_string(c + 1) + "#" + names[t];
        edge_at[{c, {e, static_cast<int>(t)}}] = static_cast<int>(edges.size());
        edges.push_back({id, c, static_cast<int>(t), index_of(src)});
      }
    }
  }
  std::vector<Square> squares;
  for (int ci = 0; ci < rank; ++ci)
    for (int cj = ci + 1; cj < rank; ++cj)
      for (int ei = 0; ei < factors[ci].edge_count(); ++ei)
        for (int ej = 0; ej < factors[cj].edge_count(); ++ej)
          for (size_t t = 0; t < tuples.size(); ++t) {
            if (tuples[t][ci] != factors[ci].edge(ei).range) continue;
            if (tuples[t][cj] != factors[cj].edge(ej).range) continue;
            std::vector<int> after_i = tuples[t];
            after_i[ci] = factors[ci].edge(ei).source;
            std::vector<int> after_j = tuples[t];
            after_j[cj] = factors[cj].edge(ej).source;
            int e = edge_at.at({ci, {ei, static_cast<int>(t)}});
            int f = edge_at.at({cj, {ej, index_of(after_i)}});
            int fp = edge_at.at({cj, {ej, static_cast<int>(t)}});
            int ep = edge_at.at({ci, {ei, index_of(after_j)}});
            squares.push_back({e, f, fp, ep});
          }
  return KGraph(rank, std::move(names), std::move(edges), std::move(squares));
}

inline KGraph random_product_2graph(Rng& rng, int max_factor_vertices = 2, int max_factor_edges = 2) {
  std::vector<KGraph> factors;
  factors.push_back(random_1graph(rng, max_factor_vertices, max_factor_edges));
  factors.push_back(random_1graph(rng, max_factor_vertices, max_factor_edges));
  return product_of_1graphs(factors);
}

/// Mixed-class valid 2-graph generator.
inline KGraph random_2graph(Rng& rng, int max_vertices = 4) {
  switch (pick(rng, 0, 3)) {
    case 0: return random_single_vertex_2graph(rng);
    case 1: return random_function_2graph(rng, max_vertices);
    case 2: return random_layered_kgraph(rng, 2, 2, std::max(1, (max_vertices - 2) / 2));
    default: return random_product_2graph(rng, 2, 2);
  }
}

/// Commuting union-additive maps for the eventual-containment tests.
/// Classes: powers of one random map, coordinate actions on a product
/// carrier, and transfer systems of random graphs.
inline TransferSystem random_commuting_transfer(Rng& rng, int max_vertices = 8, int max_colors = 3) {
  int colors = pick(rng, 1, max_colors);
  int variant = pick(rng, 0, 2);
  if (variant == 0) {
    int n = pick(rng, 1, max_vertices);
    // base union-additive map by random singleton images
    std::vector<VertexSet> base(n);
    for (int v = 0; v < n; ++v) {
      int degree = pick(rng, 0, 2);
      for (int t = 0; t < degree; ++t) base[v].add(pick(rng, 0, n - 1));
    }
    auto apply_base = [&](VertexSet s) {
      VertexSet out;
      s.for_each([&](int v) { out = out | base[v]; });
      return out;
    };
    std::vector<std::vector<VertexSet>> singles(colors, std::vector<VertexSet>(n));
    for (int c = 0; c < colors; ++c) {
      int power = pick(rng, 0, 3);
      for (int v = 0; v < n; ++v) {
        VertexSet s = VertexSet::single(v);
        for (int t = 0; t < power; ++t) s = apply_base(s);
        singles[c][v] = s;
      }
    }
    return TransferSystem(colors, n, std::move(singles));
  }
  if (variant == 1) {
    // product carrier, color c acts on coordinate c only
    std::vector<int> sizes(colors);
    int total = 1;
    for (int c = 0; c < colors; ++c) {
      int room = std::max(1, max_vertices / total);
      sizes[c] = pick(rng, 1, std::min(3, room));
      total *= sizes[c];
    }
    std::vector<std::vector<VertexSet>> coord(colors);
    for (int c = 0; c < colors; ++c) {
      coord[c].resize(sizes[c]);
      for (int x = 0; x < sizes[c]; ++x) {
        int degree = pick(rng, 0, 2);
        for (int t = 0; t < degree; ++t) coord[c][x].add(pick(rng, 0, sizes[c] - 1));
      }
    }
    auto decode = [&](int v) {
      std::vector<int> t(colors);
      for (int c = 0; c < colors; ++c) {
        t[c] = v % sizes[c];
        v /= sizes[c];
      }
      return t;
    };
    auto encode = [&](const std::vector<int>& t) {
      int v = 0, stride = 1;
      for (int c = 0; c < colors; ++c) {
        v += t[c] * stride;
        stride *= sizes[c];
      }
      return v;
    };
    std::vector<std::vector<VertexSet>> singles(colors, std::vector<VertexSet>(total));
    for (int v = 0; v < total; ++v) {
      std::vector<int> t = decode(v);
      for (int c = 0; c < colors; ++c) {
        VertexSet img;
        coord[c][t[c]].for_each([&](int x) {
          std::vector<int> u = t;
          u[c] = x;
          img.add(encode(u));
        });
        singles[c][v] = img;
      }
    }
    return TransferSystem(colors, total, std::move(singles));
  }
  // transfer system of a random valid graph
  KGraph g = colors >= 2 ? random_2graph(rng, std::min(4, max_vertices)) : random_1graph(rng, 4, 6);
  return transfer_system(g);
}

/// Random partial dynamics; commuting by rejection with a fallback to
/// powers of the first map.
inline DynSys random_dynsys(Rng& rng, int rank, int max_points, bool total, bool bijective) {
  int n = pick(rng, 1, max_points);
  std::vector<std::vector<int>> maps(rank, std::vector<int>(n, -1));
  auto random_map = [&](std::vector<int>& m) {
    if (bijective) {
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      m = perm;
      return;
    }
    for (int v = 0; v < n; ++v) m[v] = (!total && pick(rng, 0, 3) == 0) ? -1 : pick(rng, 0, n - 1);
  };
  random_map(maps[0]);
  for (int c = 1; c < rank; ++c) {
    bool done = false;
    for (int attempt = 0; attempt < 64 && !done; ++attempt) {
      random_map(maps[c]);
      done = true;
      for (int i = 0; i < c && done; ++i)
        for (int v = 0; v < n && done; ++v) {
          int a = maps[i][v] < 0 ? -2 : maps[c][maps[i][v]];
          int b = maps[c][v] < 0 ? -2 : maps[i][maps[c][v]];
          if (a != b) done = false;
        }
    }
    if (!done) {
      // power of map 0 commutes with everything built from map 0
      int e = pick(rng, 0, 2);
      for (int v = 0; v < n; ++v) {
        int w = v;
        for (int t = 0; t < e && w >= 0; ++t) w = maps[0][w];
        maps[c][v] = w;
      }
    }
  }
  DynSys d = make_dynsys(rank, numbered("p", n), std::move(maps));
  if (!validate_dynsys(d).ok()) throw std::logic_error("corpus dynsys must be valid");
  return d;
}

/// Random family whose quotient off its bottom is an (E)-family, i.e. a
/// legal maximalisation input.
inline TupleFamily random_e_family_input(Rng& rng, const KGraph& g) {
  int n = g.vertex_count();
  FMask all = (FMask{1} << g.rank()) - 1;
  VertexSet seed;
  for (int v = 0; v < n; ++v)
    if (pick(rng, 0, 2) == 0) seed.add(v);
  VertexSet h0 = hereditary_closure(g, seed);
  TupleFamily fam(g.rank());
  fam[0] = h0;
  if (h0 == VertexSet::full(n)) return fam;  // nothing survives the quotient
  QuotientResult q = quotient_graph_with_map(g, h0);
  for (FMask f = 1; f <= all; ++f) {
    VertexSet raw;
    for (int v = 0; v < q.graph.vertex_count(); ++v)
      if (pick(rng, 0, 1) == 0) raw.add(v);
    VertexSet clamped = raw & f_tracing(q.graph, f);
    fam[f] = h0 | unmap_vertex_set(clamped, q.new_to_old);
  }
  return fam;
}

/// Arbitrary family, no structure guaranteed.
inline TupleFamily random_family(Rng& rng, const KGraph& g) {
  TupleFamily fam(g.rank());
  FMask all = (FMask{1} << g.rank()) - 1;
  for (FMask f = 0; f <= all; ++f) {
    VertexSet s;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (pick(rng, 0, 1) == 0) s.add(v);
    fam[f] = s;
  }
  return fam;
}

}  // namespace gilat::corpus
