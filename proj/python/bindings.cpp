// Python module exposing the main library operations. Matrices cross the
// boundary as lists of row lists; reports cross as plain dicts and tuples so
// the module has no dependency beyond the interpreter.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ishi/caratheodory.hpp"
#include "ishi/catalog.hpp"
#include "ishi/errors.hpp"
#include "ishi/geometry.hpp"
#include "ishi/graphs.hpp"
#include "ishi/io.hpp"

namespace py = pybind11;
using namespace ishi;
using Rows = std::vector<std::vector<double>>;

namespace {

Rows rows_of_mat(const dense::Mat& m) {
  Rows rows(static_cast<std::size_t>(m.rows()));
  for (int r = 0; r < m.rows(); ++r) {
    rows[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(m.cols()));
    for (int c = 0; c < m.cols(); ++c) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
  }
  return rows;
}

Rows rows_of_sym(const dense::SymMatrix& x) { return rows_of_mat(x.to_mat()); }

dense::UpperTriMatrix tri_from_rows(const Rows& rows) {
  const dense::Mat m = dense::Mat::from_rows(rows);
  if (m.rows() != m.cols()) throw ShapeMismatch("triangular data must be square");
  dense::UpperTriMatrix t(m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c < r) {
        if (m(r, c) != 0.0)
          throw ShapeMismatch("triangular data must be zero below the diagonal");
      } else {
        t.set(r, c, m(r, c));
      }
    }
  }
  return t;
}

frame::Side side_from(const std::string& side) {
  if (side == "primal") return frame::Side::primal;
  if (side == "dual") return frame::Side::dual;
  throw ShapeMismatch("side must be \"primal\" or \"dual\"");
}

const char* membership_name(geometry::Membership m) {
  switch (m) {
    case geometry::Membership::interior: return "interior";
    case geometry::Membership::boundary: return "boundary";
    case geometry::Membership::outside: return "outside";
    default: return "not_in_span";
  }
}

const char* axiom_name(frame::Axiom a) {
  switch (a) {
    case frame::Axiom::V1: return "V1";
    case frame::Axiom::V2: return "V2";
    default: return "V3";
  }
}

py::dict axiom_report_dict(const frame::AxiomReport& rep) {
  py::list violations;
  for (const auto& v : rep.violations) {
    py::dict e;
    e["axiom"] = axiom_name(v.axiom);
    e["triple"] = py::make_tuple(v.i, v.j, v.k);
    e["basis_pair"] = py::make_tuple(v.p, v.q);
    e["residual"] = v.residual;
    violations.append(std::move(e));
  }
  py::dict d;
  d["passed"] = rep.passed();
  d["violations"] = std::move(violations);
  d["warnings"] = rep.warnings;
  return d;
}

py::dict condition_dict(const caratheodory::ConditionReport& rep) {
  py::list violations;
  for (const auto& v : rep.violations)
    violations.append(py::make_tuple(v.a, v.b, v.c, v.dim_first, v.dim_second));
  py::dict d;
  d["holds"] = rep.holds;
  d["violations"] = std::move(violations);
  return d;
}

py::dict decomposition_dict(const caratheodory::Decomposition& dec) {
  py::list terms;
  for (const auto& term : dec.terms) {
    py::dict e;
    e["weight"] = term.weight;
    e["generator"] = rows_of_sym(term.generator.matrix);
    terms.append(std::move(e));
  }
  py::dict d;
  d["side"] = dec.side == frame::Side::primal ? "primal" : "dual";
  d["point"] = rows_of_sym(dec.point.matrix);
  d["terms"] = std::move(terms);
  return d;
}

frame::IshiFrame build_frame(const std::vector<int>& sizes,
                             const std::map<std::pair<int, int>, std::vector<Rows>>& generators) {
  std::map<std::pair<int, int>, std::vector<dense::Mat>> gens;
  for (const auto& [key, mats] : generators) {
    std::vector<dense::Mat> converted;
    converted.reserve(mats.size());
    for (const auto& rows : mats) converted.push_back(dense::Mat::from_rows(rows));
    gens[key] = std::move(converted);
  }
  return frame::make_frame(sizes, gens);
}

}  // namespace

PYBIND11_MODULE(ishicone, m) {
  m.doc() = "Homogeneous convex cones presented by block spectrahedral frames";

  py::register_exception<Error>(m, "Error");

  py::class_<frame::IshiFrame>(m, "Frame",
                               "Block structure plus off-diagonal subspaces; immutable.")
      .def_property_readonly("rank", &frame::IshiFrame::rank)
      .def_property_readonly("order", &frame::IshiFrame::order)
      .def_property_readonly("ambient_dim", &frame::IshiFrame::ambient_dim)
      .def_property_readonly("axioms_pass", &frame::IshiFrame::axioms_pass)
      .def_property_readonly(
          "sizes", [](const frame::IshiFrame& f) { return f.blocks().sizes; })
      .def("dim", &frame::IshiFrame::dim, py::arg("i"), py::arg("j"),
           "Dimension of the stored subspace at (i, j), 1-based, i < j.")
      .def(
          "basis",
          [](const frame::IshiFrame& f, int i, int j) {
            std::vector<Rows> out;
            for (const auto& b : f.subspace(i, j).basis()) out.push_back(rows_of_mat(b));
            return out;
          },
          py::arg("i"), py::arg("j"), "Orthonormal basis matrices of the subspace at (i, j).")
      .def("__repr__", [](const frame::IshiFrame& f) {
        return "<Frame r=" + std::to_string(f.rank()) + " n=" + std::to_string(f.order()) +
               " dim=" + std::to_string(f.ambient_dim()) + ">";
      });

  m.def("make_frame", &build_frame, py::arg("sizes"), py::arg("generators"),
        "Builds a frame from block sizes and {(i, j): [matrix, ...]} generator lists.");
  m.def(
      "verify_axioms",
      [](const frame::IshiFrame& f) { return axiom_report_dict(f.construction_report()); },
      py::arg("frame"), "Axiom report computed at construction.");

  // Geometry.
  m.def(
      "in_cone",
      [](const frame::IshiFrame& f, const Rows& x) {
        return membership_name(geometry::in_cone(f, dense::SymMatrix::from_rows(x), {}));
      },
      py::arg("frame"), py::arg("point"),
      "One of \"interior\", \"boundary\", \"outside\", \"not_in_span\".");
  m.def(
      "orbit_factor",
      [](const frame::IshiFrame& f, const Rows& x) {
        return rows_of_mat(
            geometry::orbit_factor(f, dense::SymMatrix::from_rows(x), {}).matrix.to_mat());
      },
      py::arg("frame"), py::arg("point"),
      "Upper-triangular T with T'T = point for an interior point.");
  m.def(
      "dual_orbit_factor",
      [](const frame::IshiFrame& f, const Rows& y) {
        return rows_of_mat(
            geometry::dual_orbit_factor(f, dense::SymMatrix::from_rows(y), {}).matrix.to_mat());
      },
      py::arg("frame"), py::arg("point"),
      "Upper-triangular T with proj(TT') = point for a dual interior point.");
  m.def(
      "minimal_face",
      [](const frame::IshiFrame& f, const Rows& x) {
        return geometry::minimal_face(f, dense::SymMatrix::from_rows(x), {}).indices;
      },
      py::arg("frame"), py::arg("point"),
      "Ascending block indices of the minimal face containing a closure point.");
  m.def(
      "group_act",
      [](const frame::IshiFrame& f, const Rows& t, const Rows& x, const std::string& side) {
        const auto elem = geometry::make_triangular(f, tri_from_rows(t));
        return rows_of_sym(
            geometry::group_act(elem, frame::BlockElement{f, dense::SymMatrix::from_rows(x)},
                                side_from(side))
                .matrix);
      },
      py::arg("frame"), py::arg("t"), py::arg("point"), py::arg("side") = "primal",
      "Applies the triangular transport T'XT (primal) or proj(TXT') (dual).");
  m.def(
      "maximal_chain_rank",
      [](const frame::IshiFrame& f) { return geometry::maximal_chain_rank(f); },
      py::arg("frame"), "Length of the longest strictly increasing face chain.");

  // Conditions, witnesses, bounds.
  m.def(
      "primal_condition",
      [](const frame::IshiFrame& f) { return condition_dict(caratheodory::primal_condition(f)); },
      py::arg("frame"));
  m.def(
      "dual_condition",
      [](const frame::IshiFrame& f) { return condition_dict(caratheodory::dual_condition(f)); },
      py::arg("frame"));
  m.def(
      "operator_condition",
      [](const frame::IshiFrame& f, const std::string& side) {
        return condition_dict(
            caratheodory::operator_condition(f, side_from(side), dense::Tolerance{1e-8, 1e-8}));
      },
      py::arg("frame"), py::arg("side"),
      "Same verdict as the dimension conditions, via scaled-isometry defects.");
  m.def(
      "decompose",
      [](const frame::IshiFrame& f, const Rows& x) {
        return decomposition_dict(
            caratheodory::decompose(f, dense::SymMatrix::from_rows(x), {}));
      },
      py::arg("frame"), py::arg("point"),
      "Writes a closure point as a sum of extreme rays, one per face block.");
  m.def(
      "decompose_dual_orbit",
      [](const frame::IshiFrame& f, const Rows& t) {
        return decomposition_dict(caratheodory::decompose_dual_orbit(
            f, geometry::make_triangular(f, tri_from_rows(t))));
      },
      py::arg("frame"), py::arg("t"),
      "Decomposes proj(TT') into dual rays from the triangular generator T.");
  m.def(
      "dual_witness",
      [](const frame::IshiFrame& f, int k, int j, int i, const Rows& a, const Rows& b) {
        return decomposition_dict(caratheodory::dual_witness(
            f, k, j, i, dense::Mat::from_rows(a), dense::Mat::from_rows(b)));
      },
      py::arg("frame"), py::arg("k"), py::arg("j"), py::arg("i"), py::arg("a"), py::arg("b"),
      "Two tilted rays averaging to an interior dual point, for k < j < i.");
  m.def(
      "primal_witness",
      [](const frame::IshiFrame& f, int i, int j, int k, const Rows& a, const Rows& b) {
        return decomposition_dict(caratheodory::primal_witness(
            f, i, j, k, dense::Mat::from_rows(a), dense::Mat::from_rows(b)));
      },
      py::arg("frame"), py::arg("i"), py::arg("j"), py::arg("k"), py::arg("a"), py::arg("b"),
      "Mirror construction on the primal side, for i < j < k.");
  m.def(
      "dual_witness_search",
      [](const frame::IshiFrame& f, const Rows& x) -> py::object {
        const auto hit =
            caratheodory::dual_witness_search(f, dense::SymMatrix::from_rows(x), {});
        if (!hit) return py::none();
        return decomposition_dict(*hit);
      },
      py::arg("frame"), py::arg("point"),
      "Two-ray average matching the point, or None when no violation fits.");
  m.def(
      "caratheodory_bounds",
      [](const frame::IshiFrame& f, const Rows& x, const std::string& side) {
        const auto b = caratheodory::caratheodory_bounds(f, dense::SymMatrix::from_rows(x),
                                                         side_from(side), {});
        return py::make_tuple(b.lower, b.upper, b.witness_reduced);
      },
      py::arg("frame"), py::arg("point"), py::arg("side") = "primal",
      "(lower, upper, witness_reduced) on the number of extreme rays needed.");
  m.def(
      "indecomposable_components",
      [](const frame::IshiFrame& f) { return caratheodory::indecomposable_components(f); },
      py::arg("frame"));
  m.def(
      "is_selfdual",
      [](const frame::IshiFrame& f) {
        const auto rep = caratheodory::is_selfdual(f);
        py::list comps;
        for (const auto& comp : rep.components) {
          py::dict e;
          e["indices"] = comp.indices;
          e["internally_nontrivial"] = comp.internally_nontrivial;
          e["equal_dimensions"] = comp.equal_dimensions;
          e["common_dim"] = comp.common_dim;
          comps.append(std::move(e));
        }
        py::dict d;
        d["selfdual"] = rep.selfdual;
        d["criteria_agree"] = rep.criteria_agree;
        d["primal"] = condition_dict(rep.primal);
        d["dual"] = condition_dict(rep.dual);
        d["components"] = std::move(comps);
        return d;
      },
      py::arg("frame"));

  // Graphs.
  py::class_<graphs::PatternGraph>(m, "Graph", "Undirected sparsity pattern, 1-based vertices.")
      .def(py::init<int>(), py::arg("vertex_count"))
      .def_static("from_edges", &graphs::PatternGraph::from_edges, py::arg("vertex_count"),
                  py::arg("edges"))
      .def_static("path", &graphs::PatternGraph::path, py::arg("n"))
      .def_static("cycle", &graphs::PatternGraph::cycle, py::arg("n"))
      .def_static("complete", &graphs::PatternGraph::complete, py::arg("n"))
      .def_static("star", &graphs::PatternGraph::star, py::arg("n"))
      .def_property_readonly("vertex_count", &graphs::PatternGraph::vertex_count)
      .def_property_readonly("edge_count", &graphs::PatternGraph::edge_count)
      .def("add_edge", &graphs::PatternGraph::add_edge, py::arg("u"), py::arg("v"))
      .def("has_edge", &graphs::PatternGraph::has_edge, py::arg("u"), py::arg("v"))
      .def("degree", &graphs::PatternGraph::degree, py::arg("v"))
      .def("edges", &graphs::PatternGraph::edges)
      .def("__eq__",
           [](const graphs::PatternGraph& a, const graphs::PatternGraph& b) { return a == b; })
      .def("__repr__", [](const graphs::PatternGraph& g) {
        return "<Graph n=" + std::to_string(g.vertex_count()) +
               " m=" + std::to_string(g.edge_count()) + ">";
      });

  m.def(
      "is_chordal",
      [](const graphs::PatternGraph& g) {
        const auto res = graphs::is_chordal(g);
        py::dict d;
        d["chordal"] = res.chordal;
        d["ordering"] = res.ordering;
        return d;
      },
      py::arg("graph"));
  m.def(
      "is_homogeneous_chordal",
      [](const graphs::PatternGraph& g) {
        const auto res = graphs::is_homogeneous_chordal(g);
        py::dict d;
        d["homogeneous"] = res.homogeneous;
        d["ordering"] = res.ordering;
        d["obstruction"] = res.obstruction;
        return d;
      },
      py::arg("graph"), "No induced 4-path and no induced 4-cycle; certificate either way.");
  m.def(
      "classify_sparse",
      [](const graphs::PatternGraph& g) {
        const auto res = graphs::classify_sparse(g);
        py::dict d;
        d["homogeneous"] = res.verdict == graphs::SparseClass::homogeneous;
        d["ordering"] = res.ordering;
        d["obstruction"] = res.obstruction;
        return d;
      },
      py::arg("graph"));
  m.def("frame_from_graph", &graphs::frame_from_graph, py::arg("graph"), py::arg("labelling"),
        "Frame with unit blocks and a line subspace per edge, relabelled as given.");
  m.def(
      "enumerate_connected_homogeneous",
      [](int n) {
        py::list out;
        for (const auto& cls : graphs::enumerate_connected_homogeneous(n)) {
          py::dict e;
          e["edges"] = cls.representative.edges();
          e["frame_dimension"] = cls.frame_dimension;
          e["labelled_count"] = cls.labelled_count;
          e["ordering"] = cls.ordering;
          out.append(std::move(e));
        }
        return out;
      },
      py::arg("n"), "Isomorphism classes of connected homogeneous patterns, n <= 5.");

  // Catalog.
  m.def("star3", &catalog::star3, "Rank-3 frame with V(1,2) trivial and two line subspaces.");
  m.def("full", &catalog::full, py::arg("n"), "Frame of the full symmetric cone of order n.");
  m.def("lorentz", &catalog::lorentz, py::arg("m"),
        "Rank-2 frame whose cone is a second-order cone slice.");
  m.def("witness3", &catalog::witness3,
        "Rank-3 frame with block sizes (2, 1, 1) failing both conditions.");
  m.def("direct_sum", &catalog::direct_sum, py::arg("a"), py::arg("b"));
  m.def("homogeneous_catalog", [] {
    py::list out;
    for (const auto& nf : catalog::homogeneous_catalog())
      out.append(py::make_tuple(nf.name, nf.frame));
    return out;
  });
  m.def(
      "random_frames",
      [](int count, unsigned long long seed) {
        py::list out;
        for (const auto& nf : catalog::random_frames(count, seed))
          out.append(py::make_tuple(nf.name, nf.frame));
        return out;
      },
      py::arg("count"), py::arg("seed"),
      "Axiom-certified random frames cycling several construction kinds.");

  // Serialization.
  m.def("frame_to_json", &io::frame_to_json, py::arg("frame"));
  m.def(
      "frame_from_json",
      [](const std::string& text) { return io::frame_from_json(text, {}); },
      py::arg("text"));
}
