#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gilat/corpus.hpp"
#include "gilat/io.hpp"
#include "gilat/lattice.hpp"
#include "gilat/nt.hpp"
#include "gilat/oracle.hpp"

namespace gilat::cli {

inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInconclusive = 4;

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline KGraph load_graph(const std::string& path, bool must_be_valid = true) {
  KGraph g = io::graph_from_json(io::parse_text(slurp(path)));
  if (must_be_valid) {
    ValidationReport rep = g.validate();
    if (!rep.ok()) throw InputError(path + ": graph fails validation (" +
                                    rep.violations.front().message + ")");
  }
  return g;
}

inline TupleFamily load_family(const std::string& path, const KGraph& g) {
  return io::family_from_json(io::parse_text(slurp(path)), g.rank(), g.vertex_names());
}

inline DynSys load_dynsys(const std::string& path) {
  return io::dynsys_from_json(io::parse_text(slurp(path)));
}

inline TupleFamily load_dyn_family(const std::string& path, const DynSys& d) {
  return io::family_from_json(io::parse_text(slurp(path)), d.rank, d.carrier);
}

inline FMask parse_colors_flag(const std::string& flag, int rank) {
  return io::parse_fkey(flag, rank);
}

inline VertexSet parse_vertices_flag(const std::string& flag,
                                     const std::vector<std::string>& declared) {
  std::vector<std::string> names;
  size_t pos = 0;
  while (pos < flag.size()) {
    size_t comma = flag.find(',', pos);
    names.push_back(flag.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    pos = comma == std::string::npos ? flag.size() : comma + 1;
  }
  return io::vertex_set_from_names(names, declared);
}

inline void explain_family(std::ostream& out, const KGraph& g, const TupleFamily& h) {
  FMask all = (FMask{1} << g.rank()) - 1;
  for (FMask f = 1; f < all; ++f) {
    if (!is_hereditary(g, h[0])) return;  // sets undefined without a hereditary bottom
    RfConditionSets sets = rf_condition_sets(g, h, f);
    out << "F=" << fmask_to_string(f) << ": H1=" << io::vertex_set_to_json(sets.h1, g.vertex_names())
        << " H2=" << io::vertex_set_to_json(sets.h2, g.vertex_names())
        << " H3=" << io::vertex_set_to_json(sets.h3, g.vertex_names())
        << " component=" << io::vertex_set_to_json(h[f], g.vertex_names()) << "\n";
  }
}

inline int decide(std::ostream& out, bool value, const std::string& diagnostic) {
  if (value) {
    out << "true\n";
    return kExitTrue;
  }
  out << diagnostic << "\n";
  return kExitFalse;
}

}  // namespace detail

/// Command dispatcher; returns the process exit code. Output documents are
/// byte-deterministic for fixed inputs and flags.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gauge-invariant ideal lattices of finite higher-rank graphs"};
  app.require_subcommand(1);

  std::string graph_path, family_path, family2_path, relative_path, sys_path;
  std::string colors_flag, h_flag, format = "json";
  bool use_oracle = false, explain = false, filter_no = false;
  uint64_t capacity = EnumerationOptions{}.capacity;
  uint64_t seed = 0;
  int gen_rank = 2, gen_count = 10, gen_max_vertices = 4;

  auto* validate = app.add_subcommand("validate", "check the k-graph axioms");
  validate->add_option("graph", graph_path)->required();

  auto* tracing = app.add_subcommand("tracing", "F-tracing vertices");
  tracing->add_option("--F", colors_flag)->required();
  tracing->add_option("graph", graph_path)->required();

  auto* jf = app.add_subcommand("jf", "covariance vertex set over a hereditary base");
  jf->add_option("--F", colors_flag)->required();
  jf->add_option("--H0", h_flag);
  jf->add_option("graph", graph_path)->required();

  auto* quotient = app.add_subcommand("quotient", "quotient graph off a hereditary set");
  quotient->add_option("--H", h_flag);
  quotient->add_option("graph", graph_path)->required();

  auto* sub = app.add_subcommand("subgraph", "subgraph on a hereditary set");
  sub->add_option("--H", h_flag);
  sub->add_option("graph", graph_path)->required();

  auto* saturate = app.add_subcommand("saturate", "least saturated superset");
  saturate->add_option("--H", h_flag);
  saturate->add_option("graph", graph_path)->required();

  auto* check_nt = app.add_subcommand("check-nt", "decide the NT conditions");
  check_nt->add_option("graph", graph_path)->required();
  check_nt->add_option("family", family_path)->required();
  check_nt->add_flag("--oracle", use_oracle);
  check_nt->add_flag("--explain", explain);

  auto* check_no = app.add_subcommand("check-no", "decide the NO conditions");
  check_no->add_option("graph", graph_path)->required();
  check_no->add_option("family", family_path)->required();
  check_no->add_option("--relative", relative_path);
  check_no->add_flag("--oracle", use_oracle);
  check_no->add_flag("--explain", explain);

  auto* check_m = app.add_subcommand("check-m", "decide maximality");
  check_m->add_option("graph", graph_path)->required();
  check_m->add_option("family", family_path)->required();
  check_m->add_flag("--oracle", use_oracle);
  check_m->add_flag("--explain", explain);

  auto* maxim = app.add_subcommand("maximalise", "maximal family with the same induced ideal");
  maxim->add_option("graph", graph_path)->required();
  maxim->add_option("family", family_path)->required();

  auto* enumerate = app.add_subcommand("enumerate", "all NT-families in canonical order");
  enumerate->add_option("graph", graph_path)->required();
  auto* no_flag = enumerate->add_flag("--no", filter_no);
  enumerate->add_option("--relative", relative_path)->excludes(no_flag);
  enumerate->add_option("--capacity", capacity);

  auto* lattice_cmd = app.add_subcommand("lattice", "Hasse diagram of the NT-families");
  lattice_cmd->add_option("graph", graph_path)->required();
  lattice_cmd->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
  lattice_cmd->add_option("--capacity", capacity);

  auto* meet_cmd = app.add_subcommand("meet", "componentwise meet of two NT-families");
  meet_cmd->add_option("graph", graph_path)->required();
  meet_cmd->add_option("family1", family_path)->required();
  meet_cmd->add_option("family2", family2_path)->required();

  auto* join_cmd = app.add_subcommand("join", "lattice join of two NT-families");
  join_cmd->add_option("graph", graph_path)->required();
  join_cmd->add_option("family1", family_path)->required();
  join_cmd->add_option("family2", family2_path)->required();
  join_cmd->add_option("--capacity", capacity);

  auto* join_formula = app.add_subcommand("join-formula", "iteration formula for the join");
  join_formula->add_option("--H0", h_flag);
  join_formula->add_option("graph", graph_path)->required();
  join_formula->add_option("family1", family_path)->required();
  join_formula->add_option("family2", family2_path)->required();

  auto* regular = app.add_subcommand("regular-report", "sourceless-case verification report");
  regular->add_option("graph", graph_path)->required();
  regular->add_option("--capacity", capacity);

  auto* rsy = app.add_subcommand("rsy-report", "locally convex case verification report");
  rsy->add_option("graph", graph_path)->required();
  rsy->add_option("--capacity", capacity);

  auto* dvalidate = app.add_subcommand("dynsys-validate", "check commutativity of the maps");
  dvalidate->add_option("system", sys_path)->required();

  auto* dcheck = app.add_subcommand("dynsys-check-nt", "decide the NT conditions for dynamics");
  dcheck->add_option("system", sys_path)->required();
  dcheck->add_option("family", family_path)->required();
  dcheck->add_flag("--oracle", use_oracle);
  dcheck->add_flag("--explain", explain);

  auto* dinv = app.add_subcommand("dynsys-invariants", "fully invariant subsets");
  dinv->add_option("system", sys_path)->required();

  auto* gen = app.add_subcommand("gen", "emit a seeded corpus of valid graph documents");
  gen->add_option("--seed", seed);
  gen->add_option("--rank", gen_rank)->check(CLI::Range(1, 3));
  gen->add_option("--count", gen_count);
  gen->add_option("--max-vertices", gen_max_vertices);

  try {
    std::vector<std::string> rargs(args.rbegin(), args.rend());
    app.parse(rargs);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitTrue;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*validate) {
      KGraph g = detail::load_graph(graph_path, /*must_be_valid=*/false);
      ValidationReport rep = g.validate();
      if (rep.ok()) {
        out << "valid\n";
        return kExitTrue;
      }
      for (const Violation& v : rep.violations) {
        out << v.message << ":";
        for (const std::string& w : v.witness) out << " " << w;
        out << "\n";
      }
      return kExitFalse;
    }

    if (*tracing) {
      KGraph g = detail::load_graph(graph_path);
      FMask f = detail::parse_colors_flag(colors_flag, g.rank());
      if (f == 0) throw InputError("--F must be nonempty");
      out << io::vertex_set_to_json(f_tracing(g, f), g.vertex_names()).dump() << "\n";
      return kExitTrue;
    }

    if (*jf) {
      KGraph g = detail::load_graph(graph_path);
      FMask f = detail::parse_colors_flag(colors_flag, g.rank());
      if (f == 0) throw InputError("--F must be nonempty");
      VertexSet h0 = detail::parse_vertices_flag(h_flag, g.vertex_names());
      out << io::vertex_set_to_json(jf_vertices(g, f, h0), g.vertex_names()).dump() << "\n";
      return kExitTrue;
    }

    if (*quotient) {
      KGraph g = detail::load_graph(graph_path);
      VertexSet h = detail::parse_vertices_flag(h_flag, g.vertex_names());
      out << io::graph_to_json(quotient_graph(g, h)).dump(2) << "\n";
      return kExitTrue;
    }

    if (*sub) {
      KGraph g = detail::load_graph(graph_path);
      VertexSet h = detail::parse_vertices_flag(h_flag, g.vertex_names());
      out << io::graph_to_json(subgraph(g, h)).dump(2) << "\n";
      return kExitTrue;
    }

    if (*saturate) {
      KGraph g = detail::load_graph(graph_path);
      VertexSet h = detail::parse_vertices_flag(h_flag, g.vertex_names());
      out << io::vertex_set_to_json(saturation(g, h), g.vertex_names()).dump() << "\n";
      return kExitTrue;
    }

    if (*check_nt) {
      KGraph g = detail::load_graph(graph_path);
      TupleFamily fam = detail::load_family(family_path, g);
      if (explain) detail::explain_family(out, g, fam);
      if (use_oracle) {
        std::string why;
        return detail::decide(out, oracle::nt_via_absorbent(g, fam, &why), why);
      }
      NtDiagnostics d;
      bool value = is_nt_tuple(g, fam, &d);
      return detail::decide(out, value, d.message);
    }

    if (*check_no) {
      KGraph g = detail::load_graph(graph_path);
      TupleFamily fam = detail::load_family(family_path, g);
      if (explain) detail::explain_family(out, g, fam);
      if (!relative_path.empty()) {
        TupleFamily k = detail::load_family(relative_path, g);
        if (use_oracle) {
          std::string why;
          bool value = oracle::nt_via_absorbent(g, fam, &why) && k.subset_of(fam);
          if (value || !why.empty()) return detail::decide(out, value, why);
          return detail::decide(out, false, "relative component not contained");
        }
        NtDiagnostics d;
        return detail::decide(out, is_relative_no_tuple(g, fam, k, &d), d.message);
      }
      if (use_oracle) {
        std::string why;
        return detail::decide(out, oracle::no_via_absorbent(g, fam, &why), why);
      }
      NtDiagnostics d;
      return detail::decide(out, is_no_tuple(g, fam, &d), d.message);
    }

    if (*check_m) {
      KGraph g = detail::load_graph(graph_path);
      TupleFamily fam = detail::load_family(family_path, g);
      if (explain) detail::explain_family(out, g, fam);
      if (use_oracle) {
        std::string why;
        return detail::decide(out, oracle::m_via_absorbent(g, fam, &why), why);
      }
      NtDiagnostics d;
      return detail::decide(out, is_m_tuple(g, fam, &d), d.message);
    }

    if (*maxim) {
      KGraph g = detail::load_graph(graph_path);
      TupleFamily fam = detail::load_family(family_path, g);
      out << io::family_to_json(maximalise(g, fam), g.vertex_names()).dump(2) << "\n";
      return kExitTrue;
    }

    if (*enumerate) {
      KGraph g = detail::load_graph(graph_path);
      EnumerationOptions opts;
      opts.capacity = capacity;
      std::vector<TupleFamily> families;
      if (!relative_path.empty()) {
        TupleFamily k = detail::load_family(relative_path, g);
        families = enumerate_relative_no_tuples(g, k, opts);
      } else if (filter_no) {
        families = enumerate_no_tuples(g, opts);
      } else {
        families = enumerate_nt_tuples(g, opts);
      }
      io::json j;
      j["count"] = families.size();
      io::json arr = io::json::array();
      for (const TupleFamily& h : families) arr.push_back(io::family_to_json(h, g.vertex_names()));
      j["families"] = arr;
      out << j.dump(2) << "\n";
      return kExitTrue;
    }

    if (*lattice_cmd) {
      KGraph g = detail::load_graph(graph_path);
      EnumerationOptions opts;
      opts.capacity = capacity;
      IdealLattice lat = hasse(g, enumerate_nt_tuples(g, opts));
      if (format == "dot")
        out << io::lattice_to_dot(g, lat);
      else
        out << io::lattice_to_json(g, lat).dump(2) << "\n";
      return kExitTrue;
    }

    if (*meet_cmd) {
      KGraph g = detail::load_graph(graph_path);
      TupleFamily a = detail::load_family(family_path, g);
      TupleFamily b = detail::load_family(family2_path, g);
      out << io::family_to_json(meet(g, a, b), g.vertex_names()).dump(2) << "\n";
      return kExitTrue;
    }

    if (*join_cmd) {
      KGraph g = detail::load_graph(graph_path);
      TupleFamily a = detail::load_family(family_path, g);
      TupleFamily b = detail::load_family(family2_path, g);
      EnumerationOptions opts;
      opts.capacity = capacity;
      err << "capacity bound " << opts.capacity << ", load "
          << (static_cast<uint64_t>(g.vertex_count()) << g.rank()) << "\n";
      out << io::family_to_json(join(g, a, b, enumerate_nt_tuples(g, opts)), g.vertex_names()).dump(2)
          << "\n";
      return kExitTrue;
    }

    if (*join_formula) {
      KGraph g = detail::load_graph(graph_path);
      TupleFamily a = detail::load_family(family_path, g);
      TupleFamily b = detail::load_family(family2_path, g);
      VertexSet h0 = detail::parse_vertices_flag(h_flag, g.vertex_names());
      out << io::family_to_json(join_formula_check(g, a, b, h0), g.vertex_names()).dump(2) << "\n";
      return kExitTrue;
    }

    if (*regular) {
      KGraph g = detail::load_graph(graph_path);
      EnumerationOptions opts;
      opts.capacity = capacity;
      Report rep = regular_case_report(g, opts);
      out << rep.text();
      return rep.ok ? kExitTrue : kExitFalse;
    }

    if (*rsy) {
      KGraph g = detail::load_graph(graph_path);
      EnumerationOptions opts;
      opts.capacity = capacity;
      Report rep = rsy_report(g, opts);
      out << rep.text();
      return rep.ok ? kExitTrue : kExitFalse;
    }

    if (*dvalidate) {
      DynSys d = detail::load_dynsys(sys_path);
      DynValidationReport rep = validate_dynsys(d);
      if (rep.ok()) {
        out << "valid\n";
        return kExitTrue;
      }
      for (const DynViolation& v : rep.violations) out << v.message << "\n";
      return kExitFalse;
    }

    if (*dcheck) {
      DynSys d = detail::load_dynsys(sys_path);
      TupleFamily fam = detail::load_dyn_family(family_path, d);
      if (use_oracle) {
        std::string why;
        return detail::decide(out, oracle::dyn_nt_boxed(d, fam, &why), why);
      }
      NtDiagnostics diag;
      bool value = dyn_is_nt_tuple(d, fam, &diag);
      if (explain && !value) out << "witness detail: " << diag.message << "\n";
      return detail::decide(out, value, diag.message);
    }

    if (*dinv) {
      DynSys d = detail::load_dynsys(sys_path);
      io::json arr = io::json::array();
      for (VertexSet h : dyn_invariant_subsets(d)) arr.push_back(io::vertex_set_to_json(h, d.carrier));
      out << arr.dump(2) << "\n";
      return kExitTrue;
    }

    if (*gen) {
      corpus::Rng rng(seed);
      io::json arr = io::json::array();
      for (int i = 0; i < gen_count; ++i) {
        KGraph g = [&] {
          if (gen_rank == 1) return corpus::random_1graph(rng, gen_max_vertices, 6);
          if (gen_rank == 2) return corpus::random_2graph(rng, gen_max_vertices);
          std::vector<KGraph> factors;
          for (int t = 0; t < 3; ++t) factors.push_back(corpus::random_1graph(rng, 2, 2));
          return corpus::product_of_1graphs(factors);
        }();
        if (!g.validate().ok()) throw std::logic_error("generated graph failed validation");
        arr.push_back(io::graph_to_json(g));
      }
      out << arr.dump(2) << "\n";
      return kExitTrue;
    }
  } catch (const InconclusiveError& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  err << "no command\n";
  return kExitInput;
}

}  // namespace gilat::cli
