#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gilat/base.hpp"
#include "gilat/dynsys.hpp"
#include "gilat/family.hpp"
#include "gilat/kgraph.hpp"
#include "gilat/lattice.hpp"

namespace gilat::io {

using json = nlohmann::ordered_json;

// F keys are comma-joined sorted 1-based colors, "" for the empty set.
inline std::string fkey(FMask f) {
  std::string s;
  for (int c : fmask_colors(f)) {
    if (!s.empty()) s += ",";
    s += std::to_string(c + 1);
  }
  return s;
}

inline FMask parse_fkey(const std::string& key, int rank) {
  if (key.empty()) return 0;
  FMask f = 0;
  size_t pos = 0;
  while (pos < key.size()) {
    size_t comma = key.find(',', pos);
    std::string tok = key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    int color;
    try {
      color = std::stoi(tok);
    } catch (const std::exception&) {
      throw InputError("bad color '" + tok + "' in component key '" + key + "'");
    }
    if (color < 1 || color > rank)
      throw InputError("color " + std::to_string(color) + " out of range in key '" + key + "'");
    FMask bit = FMask{1} << (color - 1);
    if (f & bit) throw InputError("repeated color in key '" + key + "'");
    f |= bit;
    pos = comma == std::string::npos ? key.size() : comma + 1;
  }
  return f;
}

inline json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON document");
  return j;
}

// ---- graph documents ----

inline KGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("vertices") || !j.contains("edges"))
    throw InputError("graph document needs k, vertices, edges");
  int rank = j.at("k").get<int>();
  std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
  std::map<std::string, int> vidx;
  for (size_t i = 0; i < vertices.size(); ++i) vidx[vertices[i]] = static_cast<int>(i);
  if (vidx.size() != vertices.size()) throw InputError("duplicate vertex name");

  std::vector<Edge> edges;
  std::map<std::string, int> eidx;
  for (const json& je : j.at("edges")) {
    Edge e;
    e.id = je.at("id").get<std::string>();
    e.color = je.at("color").get<int>() - 1;
    auto r = vidx.find(je.at("range").get<std::string>());
    auto s = vidx.find(je.at("source").get<std::string>());
    if (r == vidx.end() || s == vidx.end())
      throw InputError("edge " + e.id + " references an undeclared vertex");
    e.range = r->second;
    e.source = s->second;
    if (!eidx.emplace(e.id, static_cast<int>(edges.size())).second)
      throw InputError("duplicate edge id " + e.id);
    edges.push_back(e);
  }

  std::vector<Square> squares;
  if (j.contains("squares")) {
    for (const json& js : j.at("squares")) {
      if (!js.is_array() || js.size() != 4) throw InputError("square entries need 4 edge ids");
      std::array<int, 4> ids{};
      for (int i = 0; i < 4; ++i) {
        auto it = eidx.find(js[i].get<std::string>());
        if (it == eidx.end())
          throw InputError("square references unknown edge " + js[i].get<std::string>());
        ids[i] = it->second;
      }
      squares.push_back({ids[0], ids[1], ids[2], ids[3]});
    }
  }
  return KGraph(rank, std::move(vertices), std::move(edges), std::move(squares));
}

inline json graph_to_json(const KGraph& g) {
  json j;
  j["k"] = g.rank();
  j["vertices"] = g.vertex_names();
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    json je;
    je["id"] = e.id;
    je["color"] = e.color + 1;
    je["range"] = g.vertex_name(e.range);
    je["source"] = g.vertex_name(e.source);
    edges.push_back(je);
  }
  j["edges"] = edges;
  json squares = json::array();
  for (const Square& s : g.squares())
    squares.push_back({g.edge(s.e).id, g.edge(s.f).id, g.edge(s.fp).id, g.edge(s.ep).id});
  j["squares"] = squares;
  return j;
}

// ---- vertex sets and family documents ----

inline VertexSet vertex_set_from_names(const std::vector<std::string>& names,
                                       const std::vector<std::string>& declared) {
  VertexSet out;
  for (const std::string& n : names) {
    int idx = -1;
    for (size_t i = 0; i < declared.size(); ++i)
      if (declared[i] == n) idx = static_cast<int>(i);
    if (idx < 0) throw InputError("undeclared vertex '" + n + "'");
    out.add(idx);
  }
  return out;
}

inline json vertex_set_to_json(VertexSet s, const std::vector<std::string>& declared) {
  json arr = json::array();
  s.for_each([&](int v) { arr.push_back(declared[v]); });
  return arr;
}

inline TupleFamily family_from_json(const json& j, int rank,
                                    const std::vector<std::string>& declared) {
  if (!j.is_object() || !j.contains("components"))
    throw InputError("family document needs a components object");
  TupleFamily fam(rank);
  for (auto it = j.at("components").begin(); it != j.at("components").end(); ++it) {
    FMask f = parse_fkey(it.key(), rank);
    fam[f] = vertex_set_from_names(it.value().get<std::vector<std::string>>(), declared);
  }
  return fam;
}

inline json family_to_json(const TupleFamily& fam, const std::vector<std::string>& declared) {
  json comps = json::object();
  FMask all = (FMask{1} << fam.rank()) - 1;
  for (FMask f = 0; f <= all; ++f)
    if (!fam[f].empty()) comps[fkey(f)] = vertex_set_to_json(fam[f], declared);
  json j;
  j["components"] = comps;
  return j;
}

// ---- dynamical system documents ----

inline DynSys dynsys_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("carrier") || !j.contains("maps"))
    throw InputError("dynsys document needs d, carrier, maps");
  int rank = j.at("d").get<int>();
  std::vector<std::string> carrier = j.at("carrier").get<std::vector<std::string>>();
  std::map<std::string, int> idx;
  for (size_t i = 0; i < carrier.size(); ++i) idx[carrier[i]] = static_cast<int>(i);
  if (idx.size() != carrier.size()) throw InputError("duplicate carrier point");
  std::vector<std::vector<int>> maps(rank, std::vector<int>(carrier.size(), -1));
  for (const json& jm : j.at("maps")) {
    int color = jm.at("color").get<int>() - 1;
    if (color < 0 || color >= rank) throw InputError("map color out of range");
    for (const json& pair : jm.at("pairs")) {
      if (!pair.is_array() || pair.size() != 2) throw InputError("map pairs must be [from, to]");
      auto from = idx.find(pair[0].get<std::string>());
      auto to = idx.find(pair[1].get<std::string>());
      if (from == idx.end() || to == idx.end()) throw InputError("map pair references unknown point");
      if (maps[color][from->second] != -1)
        throw InputError("point " + pair[0].get<std::string>() + " mapped twice by color " +
                         std::to_string(color + 1));
      maps[color][from->second] = to->second;
    }
  }
  return make_dynsys(rank, std::move(carrier), std::move(maps));
}

inline json dynsys_to_json(const DynSys& d) {
  json j;
  j["d"] = d.rank;
  j["carrier"] = d.carrier;
  json maps = json::array();
  for (int c = 0; c < d.rank; ++c) {
    json jm;
    jm["color"] = c + 1;
    json pairs = json::array();
    for (int v = 0; v < d.point_count(); ++v)
      if (d.maps[c][v] >= 0) pairs.push_back({d.carrier[v], d.carrier[d.maps[c][v]]});
    jm["pairs"] = pairs;
    maps.push_back(jm);
  }
  j["maps"] = maps;
  return j;
}

// ---- lattice export ----

inline json lattice_to_json(const KGraph& g, const IdealLattice& lat) {
  json j;
  j["k"] = lat.rank;
  json nodes = json::array();
  for (const LatticeNode& n : lat.nodes) {
    json jn = family_to_json(n.family, g.vertex_names());
    jn["is_no"] = n.is_no;
    jn["is_m"] = n.is_m;
    if (n.has_antichain) {
      json label = json::array();
      for (FMask f : n.antichain) label.push_back(fkey(f));
      jn["antichain"] = label;
    }
    nodes.push_back(jn);
  }
  j["nodes"] = nodes;
  json covers = json::array();
  for (auto [lo, hi] : lat.covers) covers.push_back({lo, hi});
  j["covers"] = covers;
  return j;
}

inline IdealLattice lattice_from_json(const KGraph& g, const json& j) {
  IdealLattice lat;
  lat.rank = j.at("k").get<int>();
  for (const json& jn : j.at("nodes")) {
    LatticeNode n{family_from_json(jn, lat.rank, g.vertex_names()), false, false, false, {}};
    n.is_no = jn.at("is_no").get<bool>();
    n.is_m = jn.at("is_m").get<bool>();
    if (jn.contains("antichain")) {
      n.has_antichain = true;
      for (const json& l : jn.at("antichain")) n.antichain.push_back(parse_fkey(l, lat.rank));
    }
    lat.nodes.push_back(std::move(n));
  }
  for (const json& jc : j.at("covers")) lat.covers.emplace_back(jc[0].get<int>(), jc[1].get<int>());
  return lat;
}

/// DOT rendering, bottom-up ranks. Node labels list the nonempty
/// components only.
inline std::string lattice_to_dot(const KGraph& g, const IdealLattice& lat) {
  std::string out = "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  FMask all = (FMask{1} << lat.rank) - 1;
  for (size_t i = 0; i < lat.nodes.size(); ++i) {
    const TupleFamily& fam = lat.nodes[i].family;
    std::string label;
    for (FMask f = 0; f <= all; ++f) {
      if (fam[f].empty()) continue;
      if (!label.empty()) label += "\\n";
      std::string names;
      fam[f].for_each([&](int v) {
        if (!names.empty()) names += ",";
        names += g.vertex_name(v);
      });
      label += fkey(f) + "->{" + names + "}";
    }
    if (label.empty()) label = "0";
    out += "  n" + std::to_string(i) + " [label=\"" + label + "\"";
    if (lat.nodes[i].is_no) out += ", style=bold";
    out += "];\n";
  }
  for (auto [lo, hi] : lat.covers)
    out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace gilat::io
