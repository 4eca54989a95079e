#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gilat/base.hpp"

namespace gilat {

/// Edge of the colored skeleton. Colors are 0-based internally; documents
/// use the 1-based convention.
struct Edge {
  std::string id;
  int color = 0;
  int range = 0;   // r(e)
  int source = 0;  // s(e)
};

/// One factorisation square e.f = f'.e' with color(e) = color(e') <
/// color(f) = color(f'). Stored as edge indices in that order.
struct Square {
  int e = -1, f = -1, fp = -1, ep = -1;
};

struct Violation {
  enum class Kind {
    BadSquare,
    UnmatchedLeftPair,
    DuplicateLeftPair,
    UnmatchedRightPair,
    DuplicateRightPair,
    CubeFailure,
  };
  Kind kind;
  std::string message;
  std::vector<std::string> witness;  // edge ids involved
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Finite k-graph presented by its colored skeleton plus the table of
/// bicolored factorisation squares. Immutable after construction.
class KGraph {
 public:
  KGraph(int rank, std::vector<std::string> vertex_names, std::vector<Edge> edges,
         std::vector<Square> squares)
      : rank_(rank),
        vertex_names_(std::move(vertex_names)),
        edges_(std::move(edges)),
        squares_(std::move(squares)) {
    if (rank_ < 1 || rank_ > kMaxRank) throw InputError("rank must be in [1," + std::to_string(kMaxRank) + "]");
    if (static_cast<int>(vertex_names_.size()) > kMaxVertices)
      throw InputError("at most " + std::to_string(kMaxVertices) + " vertices supported");
    for (const Edge& e : edges_) {
      if (e.color < 0 || e.color >= rank_) throw InputError("edge " + e.id + ": color out of range");
      if (e.range < 0 || e.range >= vertex_count() || e.source < 0 || e.source >= vertex_count())
        throw InputError("edge " + e.id + ": endpoint out of range");
    }
    for (const Square& s : squares_) {
      for (int idx : {s.e, s.f, s.fp, s.ep})
        if (idx < 0 || idx >= edge_count()) throw InputError("square references unknown edge");
    }
    build_indexes();
  }

  int rank() const { return rank_; }
  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Square>& squares() const { return squares_; }

  std::optional<int> find_vertex(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> find_edge(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Edges of a given color leaving v (ranges at v).
  const std::vector<int>& out_edges(int color, int v) const { return out_edges_[color][v]; }

  /// One-step transfer: sources of color-c edges with range in S.
  VertexSet step(int color, VertexSet s) const {
    VertexSet out;
    s.for_each([&](int v) {
      for (int e : out_edges_[color][v]) out.add(edges_[e].source);
    });
    return out;
  }

  /// Square partner of an adjacent composable pair: the unique (b, a) with
  /// b.a = x.y and colors exchanged. Requires color(x) != color(y) and a
  /// complete square table (valid graph).
  std::pair<int, int> swapped(int x, int y) const {
    if (edges_[x].color < edges_[y].color) {
      auto it = left_lookup_.find({x, y});
      if (it == left_lookup_.end()) throw InputError("missing square for pair (" + edges_[x].id + "," + edges_[y].id + ")");
      const Square& sq = squares_[it->second];
      return {sq.fp, sq.ep};
    }
    auto it = right_lookup_.find({x, y});
    if (it == right_lookup_.end()) throw InputError("missing square for pair (" + edges_[x].id + "," + edges_[y].id + ")");
    const Square& sq = squares_[it->second];
    return {sq.e, sq.f};
  }

  ValidationReport validate() const;

 private:
  void build_indexes() {
    for (int v = 0; v < vertex_count(); ++v) vertex_index_[vertex_names_[v]] = v;
    if (vertex_index_.size() != vertex_names_.size()) throw InputError("duplicate vertex name");
    for (int e = 0; e < edge_count(); ++e) edge_index_[edges_[e].id] = e;
    if (edge_index_.size() != edges_.size()) throw InputError("duplicate edge id");
    out_edges_.assign(rank_, std::vector<std::vector<int>>(vertex_count()));
    for (int e = 0; e < edge_count(); ++e) out_edges_[edges_[e].color][edges_[e].range].push_back(e);
    for (size_t i = 0; i < squares_.size(); ++i) {
      const Square& s = squares_[i];
      // Lookups keep the first occurrence; validate() reports duplicates.
      left_lookup_.emplace(std::make_pair(s.e, s.f), static_cast<int>(i));
      right_lookup_.emplace(std::make_pair(s.fp, s.ep), static_cast<int>(i));
    }
  }

  int rank_;
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<Square> squares_;
  std::map<std::string, int> vertex_index_;
  std::map<std::string, int> edge_index_;
  std::vector<std::vector<std::vector<int>>> out_edges_;
  std::map<std::pair<int, int>, int> left_lookup_;
  std::map<std::pair<int, int>, int> right_lookup_;
};

namespace detail {

// Sort a composable descending tricolored word to ascending order, swapping
// positions in the given sequence. Word entries are edge indices.
inline std::array<int, 3> sort_tricolor(const KGraph& g, std::array<int, 3> w,
                                        const std::array<std::pair<int, int>, 3>& order) {
  for (auto [i, j] : order) {
    auto [a, b] = g.swapped(w[i], w[j]);
    w[i] = a;
    w[j] = b;
  }
  return w;
}

}  // namespace detail

inline ValidationReport KGraph::validate() const {
  ValidationReport report;

  // Square shape: colors, composability, frame match.
  bool shapes_ok = true;
  for (const Square& s : squares_) {
    const Edge &e = edges_[s.e], &f = edges_[s.f], &fp = edges_[s.fp], &ep = edges_[s.ep];
    std::string msg;
    if (!(e.color == ep.color && f.color == fp.color && e.color < f.color))
      msg = "colors must satisfy color(e)=color(e')<color(f)=color(f')";
    else if (e.source != f.range)
      msg = "left side not composable: s(e) != r(f)";
    else if (fp.source != ep.range)
      msg = "right side not composable: s(f') != r(e')";
    else if (e.range != fp.range)
      msg = "frame mismatch: r(e) != r(f')";
    else if (f.source != ep.source)
      msg = "frame mismatch: s(f) != s(e')";
    if (!msg.empty()) {
      report.violations.push_back({Violation::Kind::BadSquare, msg, {e.id, f.id, fp.id, ep.id}});
      shapes_ok = false;
    }
  }

  // Bijectivity: every composable bicolored pair occurs on the matching
  // side of exactly one square.
  std::map<std::pair<int, int>, int> left_count, right_count;
  for (const Square& s : squares_) {
    left_count[{s.e, s.f}]++;
    right_count[{s.fp, s.ep}]++;
  }
  bool pairs_ok = shapes_ok;
  for (int a = 0; a < edge_count(); ++a) {
    for (int b = 0; b < edge_count(); ++b) {
      if (edges_[a].source != edges_[b].range) continue;
      if (edges_[a].color < edges_[b].color) {
        int c = left_count.count({a, b}) ? left_count[{a, b}] : 0;
        if (c == 0) {
          report.violations.push_back({Violation::Kind::UnmatchedLeftPair,
                                       "composable pair has no square", {edges_[a].id, edges_[b].id}});
          pairs_ok = false;
        } else if (c > 1) {
          report.violations.push_back({Violation::Kind::DuplicateLeftPair,
                                       "composable pair occurs in several squares", {edges_[a].id, edges_[b].id}});
          pairs_ok = false;
        }
      } else if (edges_[a].color > edges_[b].color) {
        int c = right_count.count({a, b}) ? right_count[{a, b}] : 0;
        if (c == 0) {
          report.violations.push_back({Violation::Kind::UnmatchedRightPair,
                                       "composable pair has no square", {edges_[a].id, edges_[b].id}});
          pairs_ok = false;
        } else if (c > 1) {
          report.violations.push_back({Violation::Kind::DuplicateRightPair,
                                       "composable pair occurs in several squares", {edges_[a].id, edges_[b].id}});
          pairs_ok = false;
        }
      }
    }
  }

  // Cube condition: both rewrite orders of a composable tricolored word
  // must agree. Needs a complete square table, so skip when pairs failed.
  if (pairs_ok && rank_ >= 3) {
    for (int z = 0; z < edge_count(); ++z) {
      for (int y = 0; y < edge_count(); ++y) {
        if (edges_[z].source != edges_[y].range) continue;
        if (edges_[z].color <= edges_[y].color) continue;
        for (int x = 0; x < edge_count(); ++x) {
          if (edges_[y].source != edges_[x].range) continue;
          if (edges_[y].color <= edges_[x].color) continue;
          // w = z.y.x with strictly descending colors; sort front-first
          // vs back-first.
          auto a = detail::sort_tricolor(*this, {z, y, x}, {{{0, 1}, {1, 2}, {0, 1}}});
          auto b = detail::sort_tricolor(*this, {z, y, x}, {{{1, 2}, {0, 1}, {1, 2}}});
          if (a != b) {
            report.violations.push_back({Violation::Kind::CubeFailure,
                                         "tricolored word has two distinct sorted forms",
                                         {edges_[z].id, edges_[y].id, edges_[x].id}});
          }
        }
      }
    }
  }

  return report;
}

inline ValidationReport validate_kgraph(const KGraph& g) { return g.validate(); }

/// Hereditary: no path leaves H. Single-color steps suffice.
inline bool is_hereditary(const KGraph& g, VertexSet h) {
  for (int c = 0; c < g.rank(); ++c)
    if (!g.step(c, h).subset_of(h)) return false;
  return true;
}

/// Least hereditary superset.
inline VertexSet hereditary_closure(const KGraph& g, VertexSet s) {
  VertexSet cur = s;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int c = 0; c < g.rank(); ++c) {
      VertexSet next = cur | g.step(c, cur);
      if (next != cur) {
        cur = next;
        grew = true;
      }
    }
  }
  return cur;
}

struct QuotientResult {
  KGraph graph;
  std::vector<int> old_to_new;  // -1 for removed vertices
  std::vector<int> new_to_old;
};

/// Vertices off H and edges whose source avoids H; squares restrict.
inline QuotientResult quotient_graph_with_map(const KGraph& g, VertexSet h) {
  if (!is_hereditary(g, h)) throw InputError("quotient requires a hereditary vertex set");
  std::vector<int> old_to_new(g.vertex_count(), -1), new_to_old;
  std::vector<std::string> names;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (h.contains(v)) continue;
    old_to_new[v] = static_cast<int>(names.size());
    new_to_old.push_back(v);
    names.push_back(g.vertex_name(v));
  }
  std::vector<int> edge_map(g.edge_count(), -1);
  std::vector<Edge> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (h.contains(ed.source)) continue;  // hereditarity gives r(e) off H too
    edge_map[e] = static_cast<int>(edges.size());
    edges.push_back({ed.id, ed.color, old_to_new[ed.range], old_to_new[ed.source]});
  }
  std::vector<Square> squares;
  for (const Square& s : g.squares()) {
    if (edge_map[s.e] < 0 || edge_map[s.f] < 0 || edge_map[s.fp] < 0 || edge_map[s.ep] < 0) continue;
    squares.push_back({edge_map[s.e], edge_map[s.f], edge_map[s.fp], edge_map[s.ep]});
  }
  KGraph out(g.rank(), std::move(names), std::move(edges), std::move(squares));
  if (!out.validate().ok()) throw std::logic_error("quotient graph failed validation");
  return {std::move(out), std::move(old_to_new), std::move(new_to_old)};
}

inline KGraph quotient_graph(const KGraph& g, VertexSet h) {
  return quotient_graph_with_map(g, h).graph;
}

/// Vertices in H and edges whose range lies in H.
inline KGraph subgraph(const KGraph& g, VertexSet h) {
  if (!is_hereditary(g, h)) throw InputError("subgraph requires a hereditary vertex set");
  std::vector<int> old_to_new(g.vertex_count(), -1);
  std::vector<std::string> names;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!h.contains(v)) continue;
    old_to_new[v] = static_cast<int>(names.size());
    names.push_back(g.vertex_name(v));
  }
  std::vector<int> edge_map(g.edge_count(), -1);
  std::vector<Edge> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (!h.contains(ed.range)) continue;
    edge_map[e] = static_cast<int>(edges.size());
    edges.push_back({ed.id, ed.color, old_to_new[ed.range], old_to_new[ed.source]});
  }
  std::vector<Square> squares;
  for (const Square& s : g.squares()) {
    if (edge_map[s.e] < 0 || edge_map[s.f] < 0 || edge_map[s.fp] < 0 || edge_map[s.ep] < 0) continue;
    squares.push_back({edge_map[s.e], edge_map[s.f], edge_map[s.fp], edge_map[s.ep]});
  }
  KGraph out(g.rank(), std::move(names), std::move(edges), std::move(squares));
  if (!out.validate().ok()) throw std::logic_error("subgraph failed validation");
  return out;
}

/// Map a vertex set through an old->new index table.
inline VertexSet map_vertex_set(VertexSet s, const std::vector<int>& old_to_new) {
  VertexSet out;
  s.for_each([&](int v) {
    if (old_to_new[v] >= 0) out.add(old_to_new[v]);
  });
  return out;
}

inline VertexSet unmap_vertex_set(VertexSet s, const std::vector<int>& new_to_old) {
  VertexSet out;
  s.for_each([&](int v) { out.add(new_to_old[v]); });
  return out;
}

}  // namespace gilat
