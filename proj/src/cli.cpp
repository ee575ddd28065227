#include "ishi/cli.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ishi/errors.hpp"
#include "ishi/geometry.hpp"
#include "ishi/graphs.hpp"
#include "ishi/io.hpp"
#include "json.hpp"

namespace ishi::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

const char* axiom_name(frame::Axiom a) {
  switch (a) {
    case frame::Axiom::V1: return "V1";
    case frame::Axiom::V2: return "V2";
    default: return "V3";
  }
}

ordered_json frame_json(const frame::IshiFrame& f) {
  return ordered_json::parse(io::frame_to_json(f));
}

ordered_json square_json(const dense::SymMatrix& x) {
  return ordered_json::parse(io::point_to_json(x));
}

void print_frame_summary(const frame::IshiFrame& f, std::ostream& out) {
  out << "frame: r = " << f.rank() << ", order n = " << f.order() << ", ambient dim "
      << f.ambient_dim() << "\n";
  if (f.rank() > 1) {
    out << "subspace dims:";
    for (int i = 1; i <= f.rank(); ++i)
      for (int j = i + 1; j <= f.rank(); ++j)
        out << " V(" << i << "," << j << ")=" << f.dim(i, j);
    out << "\n";
  }
}

ordered_json axioms_json(const frame::AxiomReport& rep) {
  ordered_json j;
  j["passed"] = rep.passed();
  ordered_json viols = ordered_json::array();
  for (const auto& v : rep.violations) {
    ordered_json e;
    e["axiom"] = axiom_name(v.axiom);
    e["triple"] = {v.i, v.j, v.k};
    e["basis_pair"] = {v.p, v.q};
    e["residual"] = v.residual;
    viols.push_back(std::move(e));
  }
  j["violations"] = std::move(viols);
  j["warnings"] = rep.warnings;
  return j;
}

void print_axioms(const frame::AxiomReport& rep, std::ostream& out) {
  for (const auto& w : rep.warnings) out << "warning: " << w << "\n";
  if (rep.passed()) {
    out << "axioms: PASS\n";
    return;
  }
  out << "axioms: FAIL (" << rep.violations.size()
      << (rep.violations.size() == 1 ? " violation" : " violations") << ")\n";
  for (const auto& v : rep.violations) {
    out << "  [" << axiom_name(v.axiom) << "] at (i,j,k) = (" << v.i << "," << v.j << "," << v.k
        << "), basis pair (" << v.p << "," << v.q << "), residual " << fmt(v.residual) << "\n";
  }
}

ordered_json condition_json(const caratheodory::ConditionReport& rep) {
  ordered_json j;
  j["holds"] = rep.holds;
  j["requires"] = rep.side == frame::Side::primal
                      ? "dim V(a,c) <= dim V(b,c) whenever V(a,b) is nontrivial"
                      : "dim V(a,b) >= dim V(a,c) whenever V(b,c) is nontrivial";
  ordered_json viols = ordered_json::array();
  for (const auto& v : rep.violations) {
    ordered_json e;
    e["triple"] = {v.a, v.b, v.c};
    e["dims"] = {v.dim_first, v.dim_second};
    viols.push_back(std::move(e));
  }
  j["violations"] = std::move(viols);
  return j;
}

void print_condition(const char* label, const caratheodory::ConditionReport& rep,
                     std::ostream& out) {
  if (rep.holds) {
    out << label << ": holds\n";
    return;
  }
  out << label << ": fails (" << rep.violations.size()
      << (rep.violations.size() == 1 ? " violation" : " violations") << ")\n";
  for (const auto& v : rep.violations) {
    if (rep.side == frame::Side::primal) {
      out << "  triple (" << v.a << "," << v.b << "," << v.c << "): dim V(" << v.a << "," << v.c
          << ") = " << v.dim_first << " exceeds dim V(" << v.b << "," << v.c
          << ") = " << v.dim_second << " with V(" << v.a << "," << v.b << ") nontrivial\n";
    } else {
      out << "  triple (" << v.a << "," << v.b << "," << v.c << "): dim V(" << v.a << "," << v.b
          << ") = " << v.dim_first << " below dim V(" << v.a << "," << v.c
          << ") = " << v.dim_second << " with V(" << v.b << "," << v.c << ") nontrivial\n";
    }
  }
}

ordered_json selfdual_json(const caratheodory::SelfdualReport& rep) {
  ordered_json j;
  j["selfdual"] = rep.selfdual;
  j["criteria_agree"] = rep.criteria_agree;
  ordered_json comps = ordered_json::array();
  for (const auto& c : rep.components) {
    ordered_json e;
    e["indices"] = c.indices;
    e["internally_nontrivial"] = c.internally_nontrivial;
    e["equal_dimensions"] = c.equal_dimensions;
    e["common_dim"] = c.common_dim;
    comps.push_back(std::move(e));
  }
  j["components"] = std::move(comps);
  return j;
}

void print_matrix(const dense::SymMatrix& m, std::ostream& out, const char* indent) {
  for (int r = 0; r < m.order(); ++r) {
    out << indent << "[";
    for (int c = 0; c < m.order(); ++c) out << ' ' << fmt(m(r, c));
    out << " ]\n";
  }
}

// Maps library failures onto the exit contract.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
}

}  // namespace

AnalysisReport analyze(const frame::IshiFrame& f, const dense::Tolerance& tol) {
  AnalysisReport rep;
  rep.frame = f;
  rep.axioms = frame::verify_axioms(f, tol);
  rep.primal = caratheodory::primal_condition(f);
  rep.dual = caratheodory::dual_condition(f);
  rep.selfduality = caratheodory::is_selfdual(f);
  rep.geometric_rank = geometry::maximal_chain_rank(f);
  return rep;
}

int cmd_verify(const std::string& frame_file, const Options& opt, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const frame::IshiFrame f = io::load_frame(frame_file, opt.tol);
    const frame::AxiomReport& rep = f.construction_report();
    if (opt.format == Format::structured) {
      ordered_json j;
      j["frame"] = frame_json(f);
      j["axioms"] = axioms_json(rep);
      out << j.dump(2) << "\n";
    } else {
      print_frame_summary(f, out);
      print_axioms(rep, out);
    }
    return rep.passed() ? kExitOk : kExitSemantic;
  });
}

int cmd_analyze(const std::string& frame_file, const Options& opt, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const frame::IshiFrame f = io::load_frame(frame_file, opt.tol);
    if (!f.axioms_pass()) {
      err << "error: the frame fails the subspace axioms; run `verify` for the report\n";
      return kExitSemantic;
    }
    const AnalysisReport rep = analyze(f, opt.tol);
    if (opt.format == Format::structured) {
      ordered_json j;
      j["frame"] = frame_json(f);
      j["axioms"] = axioms_json(rep.axioms);
      j["primal_condition"] = condition_json(rep.primal);
      j["dual_condition"] = condition_json(rep.dual);
      j["selfduality"] = selfdual_json(rep.selfduality);
      j["geometric_rank"] = rep.geometric_rank;
      out << j.dump(2) << "\n";
    } else {
      print_frame_summary(f, out);
      print_axioms(rep.axioms, out);
      print_condition("primal condition", rep.primal, out);
      print_condition("dual condition", rep.dual, out);
      out << "selfdual: " << (rep.selfduality.selfdual ? "yes" : "no") << "\n";
      out << "geometric rank: " << rep.geometric_rank << "\n";
    }
    return kExitOk;
  });
}

int cmd_decompose(const std::string& frame_file, const std::string& point_file,
                  const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const frame::IshiFrame f = io::load_frame(frame_file, opt.tol);
    if (!f.axioms_pass()) {
      err << "error: the frame fails the subspace axioms; run `verify` for the report\n";
      return kExitSemantic;
    }
    const io::PointRecord rec = io::load_point(point_file);
    if (rec.order != f.order())
      throw ParseError("point order " + std::to_string(rec.order) +
                       " does not match the frame order " + std::to_string(f.order()));

    caratheodory::Decomposition dec;
    const char* method = "";
    if (opt.side == frame::Side::primal) {
      if (rec.triangular)
        throw ParseError("primal decomposition needs a symmetric point, not triangular data");
      dec = caratheodory::decompose(f, rec.symmetric(opt.tol), opt.tol);
      method = "minimal-face factorization";
    } else if (rec.triangular) {
      const auto t = geometry::make_triangular(f, rec.upper_triangular(opt.tol));
      dec = caratheodory::decompose_dual_orbit(f, t);
      method = "orbit of the given generator";
    } else {
      const dense::SymMatrix x = rec.symmetric(opt.tol);
      if (auto hit = caratheodory::dual_witness_search(f, x, opt.tol)) {
        dec = std::move(*hit);
        method = "two-ray witness average";
      } else {
        dec = caratheodory::decompose_dual_orbit(f, geometry::dual_orbit_factor(f, x, opt.tol));
        method = "orbit factorization";
      }
    }

    dense::SymMatrix sum(f.order());
    for (const auto& term : dec.terms) {
      dense::SymMatrix scaled = term.generator.matrix;
      scaled *= term.weight;
      sum += scaled;
    }
    const double residual = dense::frobenius_norm(sum - dec.point.matrix);

    if (opt.format == Format::structured) {
      ordered_json j;
      j["side"] = opt.side == frame::Side::primal ? "primal" : "dual";
      j["method"] = method;
      j["term_count"] = dec.term_count();
      ordered_json terms = ordered_json::array();
      for (const auto& term : dec.terms) {
        ordered_json e;
        e["weight"] = term.weight;
        e["generator"] = square_json(term.generator.matrix);
        terms.push_back(std::move(e));
      }
      j["terms"] = std::move(terms);
      j["point"] = square_json(dec.point.matrix);
      j["residual"] = residual;
      out << j.dump(2) << "\n";
    } else {
      out << "side: " << (opt.side == frame::Side::primal ? "primal" : "dual") << "\n";
      out << "method: " << method << "\n";
      out << "terms: " << dec.term_count() << "\n";
      int idx = 0;
      for (const auto& term : dec.terms) {
        out << "term " << ++idx << ": weight " << fmt(term.weight) << "\n";
        print_matrix(term.generator.matrix, out, "  ");
      }
      out << "reconstruction residual: " << fmt(residual) << "\n";
    }
    return kExitOk;
  });
}

namespace {

int enumerate_classes(int n, const Options& opt, std::ostream& out) {
  const auto classes = graphs::enumerate_connected_homogeneous(n);
  if (opt.format == Format::structured) {
    ordered_json j;
    j["vertices"] = n;
    ordered_json arr = ordered_json::array();
    for (const auto& cls : classes) {
      ordered_json e;
      ordered_json edges = ordered_json::array();
      for (const auto& [u, v] : cls.representative.edges()) edges.push_back({u, v});
      e["edges"] = std::move(edges);
      e["frame_dimension"] = cls.frame_dimension;
      e["labelled_count"] = cls.labelled_count;
      e["ordering"] = cls.ordering;
      arr.push_back(std::move(e));
    }
    j["classes"] = std::move(arr);
    out << j.dump(2) << "\n";
  } else {
    out << "connected homogeneous classes on " << n << " vertices: " << classes.size() << "\n";
    int idx = 0;
    for (const auto& cls : classes) {
      out << "class " << ++idx << ": frame dimension " << cls.frame_dimension
          << ", labelled graphs " << cls.labelled_count << ", edges";
      const auto edges = cls.representative.edges();
      if (edges.empty()) out << " none";
      for (const auto& [u, v] : edges) out << " " << u << "-" << v;
      out << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int cmd_graph(const std::string& graph_file, std::optional<int> enumerate_n, const Options& opt,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (enumerate_n) return enumerate_classes(*enumerate_n, opt, out);
    const graphs::PatternGraph g = io::load_graph(graph_file);
    const graphs::SparseClassification cls = graphs::classify_sparse(g);
    const graphs::ChordalityResult chord = graphs::is_chordal(g);
    const bool homogeneous = cls.verdict == graphs::SparseClass::homogeneous;
    // Distinguishes the two possible obstructions by their edge count.
    int obstruction_edges = 0;
    for (std::size_t a = 0; a < cls.obstruction.size(); ++a)
      for (std::size_t b = a + 1; b < cls.obstruction.size(); ++b)
        if (g.has_edge(cls.obstruction[a], cls.obstruction[b])) ++obstruction_edges;

    if (opt.format == Format::structured) {
      ordered_json j;
      j["vertices"] = g.vertex_count();
      ordered_json edges = ordered_json::array();
      for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
      j["edges"] = std::move(edges);
      j["chordal"] = chord.chordal;
      j["homogeneous"] = homogeneous;
      if (homogeneous) {
        j["ordering"] = cls.ordering;
        j["frame_dimension"] = g.vertex_count() + g.edge_count();
      } else {
        j["obstruction"] = cls.obstruction;
        j["obstruction_kind"] = obstruction_edges == 4 ? "induced 4-cycle" : "induced 4-path";
      }
      out << j.dump(2) << "\n";
    } else {
      out << "graph: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
      out << "chordal: " << (chord.chordal ? "yes" : "no") << "\n";
      out << "homogeneous: " << (homogeneous ? "yes" : "no") << "\n";
      if (homogeneous) {
        out << "ordering:";
        for (int v : cls.ordering) out << " " << v;
        out << "\nframe dimension: " << g.vertex_count() + g.edge_count() << "\n";
      } else {
        out << "obstruction: {";
        for (std::size_t a = 0; a < cls.obstruction.size(); ++a)
          out << (a ? "," : "") << cls.obstruction[a];
        out << "} induces a " << (obstruction_edges == 4 ? "4-cycle" : "4-path") << "\n";
      }
    }
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toolkit for homogeneous cones presented by block spectrahedral frames"};
  app.require_subcommand(1);

  dense::Tolerance defaults{};
  double tol_abs = defaults.abs_eps;
  double tol_rel = defaults.rel_eps;
  std::string format = "table";
  std::string side = "primal";
  std::string frame_file;
  std::string point_file;
  std::string graph_file;
  int enumerate_n = 0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol-abs", tol_abs, "absolute tolerance floor");
    sub->add_option("--tol-rel", tol_rel, "relative tolerance factor");
    sub->add_option("--format", format, "output style")
        ->check(CLI::IsMember({"table", "structured"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "check the subspace axioms of a frame file");
  verify->add_option("frame", frame_file, "frame JSON file")->required();
  add_common(verify);

  CLI::App* an = app.add_subcommand("analyze", "full structural report for a frame file");
  an->add_option("frame", frame_file, "frame JSON file")->required();
  add_common(an);

  CLI::App* dec = app.add_subcommand("decompose", "decompose a point into extreme rays");
  dec->add_option("frame", frame_file, "frame JSON file")->required();
  dec->add_option("point", point_file, "point JSON file")->required();
  dec->add_option("--side", side, "cone side")->check(CLI::IsMember({"primal", "dual"}));
  add_common(dec);

  CLI::App* gr = app.add_subcommand("graph", "classify a sparsity pattern");
  gr->add_option("graph", graph_file, "edge list file");
  CLI::Option* enum_opt =
      gr->add_option("--enumerate", enumerate_n,
                     "list the connected homogeneous pattern classes on N vertices");
  add_common(gr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  Options opt;
  opt.tol = dense::Tolerance{tol_abs, tol_rel};
  opt.format = format == "structured" ? Format::structured : Format::table;
  opt.side = side == "dual" ? frame::Side::dual : frame::Side::primal;

  if (verify->parsed()) return cmd_verify(frame_file, opt, out, err);
  if (an->parsed()) return cmd_analyze(frame_file, opt, out, err);
  if (dec->parsed()) return cmd_decompose(frame_file, point_file, opt, out, err);
  if (gr->parsed()) {
    const bool enumerating = enum_opt->count() > 0;
    if (!enumerating && graph_file.empty()) {
      err << "error: graph needs a pattern file or --enumerate N\n";
      return kExitParse;
    }
    return cmd_graph(graph_file, enumerating ? std::optional<int>(enumerate_n) : std::nullopt,
                     opt, out, err);
  }
  err << "error: no subcommand selected\n";
  return kExitParse;
}

}  // namespace ishi::cli
