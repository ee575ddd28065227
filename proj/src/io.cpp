#include "ishi/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "ishi/errors.hpp"
#include "json.hpp"

namespace ishi::io {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("invalid JSON");
  return j;
}

ordered_json matrix_to_rows(const dense::Mat& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

double number_at(const json& j, const char* where) {
  if (!j.is_number()) throw ParseError(std::string("expected a number in ") + where);
  return j.get<double>();
}

// Accepts either nested rows or a flat row-major list of rows*cols numbers.
dense::Mat matrix_from_json(const json& j, int rows, int cols, const char* where) {
  if (!j.is_array()) throw ParseError(std::string("expected a matrix array in ") + where);
  dense::Mat m(rows, cols);
  if (!j.empty() && j.front().is_array()) {
    if (static_cast<int>(j.size()) != rows)
      throw ParseError(std::string("wrong row count in ") + where);
    for (int r = 0; r < rows; ++r) {
      const json& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != cols)
        throw ParseError(std::string("wrong row length in ") + where);
      for (int c = 0; c < cols; ++c)
        m(r, c) = number_at(row[static_cast<std::size_t>(c)], where);
    }
    return m;
  }
  if (static_cast<int>(j.size()) != rows * cols)
    throw ParseError(std::string("wrong entry count in ") + where);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = number_at(j[static_cast<std::size_t>(r * cols + c)], where);
  return m;
}

std::pair<int, int> parse_pair_key(const std::string& key) {
  const auto comma = key.find(',');
  if (comma == std::string::npos) throw ParseError("subspace key must look like \"i,j\": " + key);
  try {
    std::size_t used_i = 0;
    std::size_t used_j = 0;
    const int i = std::stoi(key.substr(0, comma), &used_i);
    const std::string rest = key.substr(comma + 1);
    const int j = std::stoi(rest, &used_j);
    if (used_i != comma || used_j != rest.size())
      throw ParseError("subspace key must look like \"i,j\": " + key);
    return {i, j};
  } catch (const std::logic_error&) {
    throw ParseError("subspace key must look like \"i,j\": " + key);
  }
}

}  // namespace

std::string frame_to_json(const frame::IshiFrame& f) {
  ordered_json root;
  root["sizes"] = f.blocks().sizes;
  ordered_json subs = ordered_json::object();
  for (int i = 1; i <= f.rank(); ++i) {
    for (int j = i + 1; j <= f.rank(); ++j) {
      const frame::Subspace& v = f.subspace(i, j);
      if (v.dim() == 0) continue;
      ordered_json gens = ordered_json::array();
      for (const dense::Mat& b : v.basis()) gens.push_back(matrix_to_rows(b));
      subs[std::to_string(i) + "," + std::to_string(j)] = std::move(gens);
    }
  }
  root["subspaces"] = std::move(subs);
  return root.dump(2) + "\n";
}

frame::IshiFrame frame_from_json(const std::string& text, const dense::Tolerance& tol) {
  const json root = parse_json(text);
  if (!root.is_object()) throw ParseError("frame file must be a JSON object");
  if (!root.contains("sizes") || !root["sizes"].is_array())
    throw ParseError("frame file needs a \"sizes\" array");
  std::vector<int> sizes;
  for (const json& s : root["sizes"]) {
    if (!s.is_number_integer() || s.get<int>() <= 0)
      throw ParseError("block sizes must be positive integers");
    sizes.push_back(s.get<int>());
  }
  if (sizes.empty()) throw ParseError("frame file needs at least one block");
  const int r = static_cast<int>(sizes.size());

  std::map<std::pair<int, int>, std::vector<dense::Mat>> generators;
  if (root.contains("subspaces")) {
    const json& subs = root["subspaces"];
    if (!subs.is_object()) throw ParseError("\"subspaces\" must be an object");
    for (const auto& [key, value] : subs.items()) {
      const auto [i, j] = parse_pair_key(key);
      if (i < 1 || j <= i || j > r)
        throw ParseError("subspace key out of range (need 1 <= i < j <= " + std::to_string(r) +
                         "): " + key);
      if (!value.is_array()) throw ParseError("subspace \"" + key + "\" must list matrices");
      std::vector<dense::Mat> gens;
      for (const json& g : value)
        gens.push_back(matrix_from_json(g, sizes[static_cast<std::size_t>(i - 1)],
                                        sizes[static_cast<std::size_t>(j - 1)],
                                        ("subspace \"" + key + "\"").c_str()));
      generators[{i, j}] = std::move(gens);
    }
  }
  return frame::make_frame(sizes, generators, tol);
}

frame::IshiFrame load_frame(const std::string& path, const dense::Tolerance& tol) {
  return frame_from_json(read_file(path), tol);
}

void save_frame(const frame::IshiFrame& f, const std::string& path) {
  write_file(path, frame_to_json(f));
}

dense::SymMatrix PointRecord::symmetric(const dense::Tolerance& tol) const {
  double scale = 0.0;
  for (double e : entries) scale = std::max(scale, std::abs(e));
  const double thr = tol.threshold(scale);
  dense::SymMatrix x(order);
  for (int r = 0; r < order; ++r) {
    for (int c = r; c < order; ++c) {
      const double a = entries[static_cast<std::size_t>(r * order + c)];
      const double b = entries[static_cast<std::size_t>(c * order + r)];
      if (std::abs(a - b) > thr)
        throw ParseError("point entries are not symmetric at (" + std::to_string(r + 1) + "," +
                         std::to_string(c + 1) + ")");
      x.set(r, c, 0.5 * (a + b));
    }
  }
  return x;
}

dense::UpperTriMatrix PointRecord::upper_triangular(const dense::Tolerance& tol) const {
  double scale = 0.0;
  for (double e : entries) scale = std::max(scale, std::abs(e));
  const double thr = tol.threshold(scale);
  dense::UpperTriMatrix t(order);
  for (int r = 0; r < order; ++r) {
    for (int c = 0; c < order; ++c) {
      const double e = entries[static_cast<std::size_t>(r * order + c)];
      if (c < r) {
        if (std::abs(e) > thr)
          throw ParseError("triangular data has a nonzero entry below the diagonal at (" +
                           std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
      } else {
        t.set(r, c, e);
      }
    }
  }
  return t;
}

namespace {

template <typename MatrixLike>
std::string square_to_json(const MatrixLike& x, bool triangular) {
  ordered_json root;
  root["order"] = x.order();
  ordered_json entries = ordered_json::array();
  for (int r = 0; r < x.order(); ++r)
    for (int c = 0; c < x.order(); ++c) entries.push_back(x(r, c));
  root["entries"] = std::move(entries);
  if (triangular) root["triangular"] = true;
  return root.dump(2) + "\n";
}

}  // namespace

std::string point_to_json(const dense::SymMatrix& x) { return square_to_json(x, false); }

std::string point_to_json(const dense::UpperTriMatrix& t) { return square_to_json(t, true); }

PointRecord point_from_json(const std::string& text) {
  const json root = parse_json(text);
  if (!root.is_object()) throw ParseError("point file must be a JSON object");
  if (!root.contains("order") || !root["order"].is_number_integer() ||
      root["order"].get<int>() <= 0)
    throw ParseError("point file needs a positive integer \"order\"");
  PointRecord rec;
  rec.order = root["order"].get<int>();
  if (!root.contains("entries"))
    throw ParseError("point file needs an \"entries\" array");
  const dense::Mat m =
      matrix_from_json(root["entries"], rec.order, rec.order, "\"entries\"");
  rec.entries.reserve(static_cast<std::size_t>(rec.order) * static_cast<std::size_t>(rec.order));
  for (int r = 0; r < rec.order; ++r)
    for (int c = 0; c < rec.order; ++c) rec.entries.push_back(m(r, c));
  if (root.contains("triangular")) {
    if (!root["triangular"].is_boolean()) throw ParseError("\"triangular\" must be a boolean");
    rec.triangular = root["triangular"].get<bool>();
  }
  return rec;
}

PointRecord load_point(const std::string& path) { return point_from_json(read_file(path)); }

std::string graph_to_text(const graphs::PatternGraph& g) {
  std::ostringstream os;
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

graphs::PatternGraph graph_from_text(const std::string& text) {
  std::istringstream stream(text);
  std::vector<long> numbers;
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) {
      try {
        std::size_t used = 0;
        const long value = std::stol(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        numbers.push_back(value);
      } catch (const std::logic_error&) {
        throw ParseError("graph file line " + std::to_string(line_no) +
                         ": expected an integer, got \"" + token + "\"");
      }
    }
  }
  if (numbers.size() < 2) throw ParseError("graph file needs a header line \"n m\"");
  const long n = numbers[0];
  const long m = numbers[1];
  if (n < 1) throw ParseError("graph needs at least one vertex");
  if (m < 0) throw ParseError("graph edge count must be non-negative");
  if (static_cast<long>(numbers.size()) != 2 + 2 * m)
    throw ParseError("graph file announces " + std::to_string(m) + " edges but carries " +
                     std::to_string((numbers.size() - 2) / 2) + " pairs");
  std::vector<std::pair<int, int>> edges;
  for (long e = 0; e < m; ++e) {
    const long u = numbers[static_cast<std::size_t>(2 + 2 * e)];
    const long v = numbers[static_cast<std::size_t>(3 + 2 * e)];
    if (u < 1 || u > n || v < 1 || v > n)
      throw ParseError("edge endpoint out of range: " + std::to_string(u) + " " +
                       std::to_string(v));
    if (u == v) throw ParseError("self-loops are not allowed: vertex " + std::to_string(u));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return graphs::PatternGraph::from_edges(static_cast<int>(n), edges);
}

graphs::PatternGraph load_graph(const std::string& path) {
  return graph_from_text(read_file(path));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw ParseError("error while reading file: " + path);
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw ParseError("error while writing file: " + path);
}

}  // namespace ishi::io
