#pragma once

#include <string>
#include <vector>

#include "ishi/dense.hpp"
#include "ishi/frame.hpp"
#include "ishi/graphs.hpp"

// File formats used by the command-line tool. All loaders raise ParseError on
// malformed input; semantic failures (axioms, membership) keep their own
// error types so callers can distinguish bad files from bad mathematics.
namespace ishi::io {

// Frames travel as JSON: {"sizes": [n1,...,nr], "subspaces": {"i,j": [M, ...]}}
// where each generator M is a list of rows (a flat row-major list of n_i*n_j
// numbers is also accepted). Trivial subspaces are omitted on output. Numbers
// are emitted with enough digits to re-parse to the identical double, and the
// stored bases are orthonormal, so an exported frame re-enters bit-for-bit.
std::string frame_to_json(const frame::IshiFrame& f);
frame::IshiFrame frame_from_json(const std::string& text, const dense::Tolerance& tol = {});
frame::IshiFrame load_frame(const std::string& path, const dense::Tolerance& tol = {});
void save_frame(const frame::IshiFrame& f, const std::string& path);

// Points travel as JSON: {"order": n, "entries": [n*n row-major numbers]}.
// "entries" may also be nested rows. An optional "triangular": true marks the
// data as an upper-triangular group element rather than a symmetric point.
struct PointRecord {
  int order = 0;
  std::vector<double> entries;  // row-major, order*order
  bool triangular = false;

  // Raises ParseError when the entries are not symmetric within tolerance.
  dense::SymMatrix symmetric(const dense::Tolerance& tol = {}) const;
  // Raises ParseError when an entry below the diagonal is nonzero.
  dense::UpperTriMatrix upper_triangular(const dense::Tolerance& tol = {}) const;
};

std::string point_to_json(const dense::SymMatrix& x);
std::string point_to_json(const dense::UpperTriMatrix& t);
PointRecord point_from_json(const std::string& text);
PointRecord load_point(const std::string& path);

// Graphs travel as plain text: a header line "n m" (vertex and edge counts)
// followed by m lines "u v" with 1-based endpoints. '#' starts a comment.
std::string graph_to_text(const graphs::PatternGraph& g);
graphs::PatternGraph graph_from_text(const std::string& text);
graphs::PatternGraph load_graph(const std::string& path);

// Whole-file helpers; raise ParseError when the path cannot be read/written.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ishi::io
