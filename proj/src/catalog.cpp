#include "ishi/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace ishi::catalog {

using dense::Mat;
using dense::SymMatrix;
using dense::UpperTriMatrix;
using frame::IshiFrame;

namespace {

Mat scalar_one() {
  Mat m(1, 1);
  m(0, 0) = 1.0;
  return m;
}

Mat column(int rows, int hot) {
  Mat m(rows, 1);
  m(hot, 0) = 1.0;
  return m;
}

}  // namespace

IshiFrame star3() {
  std::map<std::pair<int, int>, std::vector<Mat>> gens;
  gens[{1, 3}] = {scalar_one()};
  gens[{2, 3}] = {scalar_one()};
  return frame::make_frame({1, 1, 1}, gens);
}

IshiFrame full(int n) {
  if (n < 1) throw ShapeMismatch("full frame needs at least one block");
  std::map<std::pair<int, int>, std::vector<Mat>> gens;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) gens[{i, j}] = {scalar_one()};
  return frame::make_frame(std::vector<int>(static_cast<std::size_t>(n), 1), gens);
}

IshiFrame lorentz(int m) {
  if (m < 1) throw ShapeMismatch("second-order-cone frame needs m ≥ 1");
  std::map<std::pair<int, int>, std::vector<Mat>> gens;
  std::vector<Mat> basis;
  for (int k = 0; k < m; ++k) basis.push_back(column(m, k));
  gens[{1, 2}] = std::move(basis);
  return frame::make_frame({m, 1}, gens);
}

IshiFrame witness3() {
  std::map<std::pair<int, int>, std::vector<Mat>> gens;
  gens[{1, 2}] = {column(2, 0)};
  gens[{1, 3}] = {column(2, 0), column(2, 1)};
  gens[{2, 3}] = {scalar_one()};
  return frame::make_frame({2, 1, 1}, gens);
}

IshiFrame direct_sum(const IshiFrame& a, const IshiFrame& b) {
  std::vector<int> sizes;
  for (int i = 1; i <= a.rank(); ++i) sizes.push_back(a.blocks().size(i));
  for (int i = 1; i <= b.rank(); ++i) sizes.push_back(b.blocks().size(i));
  std::map<std::pair<int, int>, std::vector<Mat>> gens;
  for (int i = 1; i <= a.rank(); ++i)
    for (int j = i + 1; j <= a.rank(); ++j)
      if (a.dim(i, j) > 0) gens[{i, j}] = a.subspace(i, j).basis();
  for (int i = 1; i <= b.rank(); ++i)
    for (int j = i + 1; j <= b.rank(); ++j)
      if (b.dim(i, j) > 0) gens[{i + a.rank(), j + a.rank()}] = b.subspace(i, j).basis();
  return frame::make_frame(sizes, gens);
}

std::vector<NamedFrame> homogeneous_catalog() {
  std::vector<NamedFrame> out;
  out.push_back({"star3", star3()});
  out.push_back({"full2", full(2)});
  out.push_back({"full3", full(3)});
  for (auto& entry : graphs::rank4_catalog()) {
    if (entry.homogeneous) out.push_back({entry.name, entry.frame});
  }
  out.push_back({"lorentz2", lorentz(2)});
  out.push_back({"lorentz3", lorentz(3)});
  out.push_back({"witness3", witness3()});
  return out;
}

std::vector<NamedFrame> full_catalog() {
  std::vector<NamedFrame> out = homogeneous_catalog();
  for (auto& entry : graphs::rank4_catalog()) {
    if (!entry.homogeneous) out.push_back({entry.name, entry.frame});
  }
  return out;
}

geometry::TriangularElement random_triangular(const IshiFrame& f, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> diag(-0.7, 0.7);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const auto& blocks = f.blocks();
  UpperTriMatrix t(blocks.n);
  for (int i = 1; i <= blocks.r; ++i) {
    const double s = std::exp(diag(rng));
    for (int d = 0; d < blocks.size(i); ++d) t.set(blocks.offset(i) + d, blocks.offset(i) + d, s);
  }
  for (int i = 1; i <= blocks.r; ++i) {
    for (int j = i + 1; j <= blocks.r; ++j) {
      if (f.dim(i, j) == 0) continue;
      Mat m(blocks.size(i), blocks.size(j));
      for (const Mat& e : f.subspace(i, j).basis()) m += coeff(rng) * e;
      t.set_block(blocks.offset(i), blocks.offset(j), m);
    }
  }
  return geometry::make_triangular(f, t);
}

SymMatrix random_interior_point(const IshiFrame& f, std::mt19937_64& rng) {
  return dense::gram(random_triangular(f, rng).matrix);
}

SymMatrix random_dual_interior_point(const IshiFrame& f, std::mt19937_64& rng) {
  const Mat tm = random_triangular(f, rng).matrix.to_mat();
  return frame::project_onto_V(f, SymMatrix::from_mat_symmetrized(tm * tm.transposed())).matrix;
}

namespace {

// Random rooted forest on n vertices; the comparability graph of the
// ancestor order has no induced P₄ or C₄.
graphs::PatternGraph random_forest_pattern(int n, std::mt19937_64& rng) {
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);  // 0 = new root
    parent[static_cast<std::size_t>(v)] = pick(rng);
  }
  graphs::PatternGraph g(n);
  for (int v = 1; v <= n; ++v) {
    for (int u = parent[static_cast<std::size_t>(v)]; u != 0;
         u = parent[static_cast<std::size_t>(u)]) {
      g.add_edge(u, v);
    }
  }
  return g;
}

// Produces random orthonormal columns in ℝ^rows (Gram–Schmidt on Gaussians).
std::vector<Mat> random_orthonormal_columns(int rows, int count, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Mat> cols;
  while (static_cast<int>(cols.size()) < count) {
    Mat v(rows, 1);
    for (int i = 0; i < rows; ++i) v(i, 0) = gauss(rng);
    for (const Mat& u : cols) v -= dense::inner(u, v) * u;
    const double norm = dense::frobenius_norm(v);
    if (norm < 1e-6) continue;
    v *= 1.0 / norm;
    cols.push_back(std::move(v));
  }
  return cols;
}

// Inflates positions of a closed ordering: a position may receive a block
// size above 1 only when it has no earlier-placed neighbor; all edges of an
// inflated position share one random column subspace.
IshiFrame inflate_pattern(const graphs::PatternGraph& g, const std::vector<int>& ordering,
                          int max_block, std::mt19937_64& rng) {
  const int n = g.vertex_count();
  auto edge_at = [&](int p, int q) {
    return g.has_edge(ordering[static_cast<std::size_t>(p - 1)],
                      ordering[static_cast<std::size_t>(q - 1)]);
  };
  std::vector<int> sizes(static_cast<std::size_t>(n), 1);
  std::uniform_int_distribution<int> size_pick(1, std::max(1, max_block));
  for (int p = 1; p <= n; ++p) {
    bool earlier_neighbor = false;
    for (int q = 1; q < p && !earlier_neighbor; ++q) earlier_neighbor = edge_at(q, p);
    if (!earlier_neighbor) sizes[static_cast<std::size_t>(p - 1)] = size_pick(rng);
  }
  std::map<std::pair<int, int>, std::vector<Mat>> gens;
  for (int p = 1; p <= n; ++p) {
    const int rows = sizes[static_cast<std::size_t>(p - 1)];
    std::vector<Mat> shared;
    for (int q = p + 1; q <= n; ++q) {
      if (!edge_at(p, q)) continue;
      if (shared.empty()) {
        std::uniform_int_distribution<int> dim_pick(1, std::min(2, rows));
        shared = rows == 1 ? std::vector<Mat>{scalar_one()}
                           : random_orthonormal_columns(rows, dim_pick(rng), rng);
      }
      gens[{p, q}] = shared;
    }
  }
  return frame::make_frame(sizes, gens);
}

}  // namespace

std::vector<NamedFrame> random_frames(int count, std::uint64_t seed, int max_block) {
  std::mt19937_64 rng(seed);
  std::vector<NamedFrame> out;
  out.reserve(static_cast<std::size_t>(count));
  int serial = 0;
  while (static_cast<int>(out.size()) < count) {
    const int kind = serial % 5;
    ++serial;
    NamedFrame nf;
    switch (kind) {
      case 0: {
        std::uniform_int_distribution<int> n_pick(3, 6);
        const graphs::PatternGraph g = random_forest_pattern(n_pick(rng), rng);
        const auto h = graphs::is_homogeneous_chordal(g);
        if (!h.homogeneous) throw CertificationError("forest pattern failed the subset scan");
        nf = {"random-sparse-" + std::to_string(serial), graphs::frame_from_graph(g, h.ordering)};
        break;
      }
      case 1: {
        std::uniform_int_distribution<int> n_pick(3, 5);
        const graphs::PatternGraph g = random_forest_pattern(n_pick(rng), rng);
        const auto h = graphs::is_homogeneous_chordal(g);
        if (!h.homogeneous) throw CertificationError("forest pattern failed the subset scan");
        nf = {"random-inflated-" + std::to_string(serial),
              inflate_pattern(g, h.ordering, max_block, rng)};
        break;
      }
      case 2: {
        std::uniform_int_distribution<int> a_pick(2, 3), b_pick(2, std::max(2, max_block));
        nf = {"random-sum-" + std::to_string(serial),
              direct_sum(full(a_pick(rng)), lorentz(b_pick(rng)))};
        break;
      }
      case 3: {
        std::uniform_int_distribution<int> n_pick(2, 5);
        nf = {"random-full-" + std::to_string(serial), full(n_pick(rng))};
        break;
      }
      default: {
        std::uniform_int_distribution<int> m_pick(2, std::max(2, max_block));
        nf = {"random-lorentz-" + std::to_string(serial), lorentz(m_pick(rng))};
        break;
      }
    }
    if (!nf.frame.axioms_pass()) {
      throw CertificationError("generated frame failed the axioms: " + nf.name);
    }
    out.push_back(std::move(nf));
  }
  return out;
}

}  // namespace ishi::catalog
