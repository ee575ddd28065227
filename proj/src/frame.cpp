#include "ishi/frame.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>

namespace ishi::frame {

using dense::Mat;
using dense::SymMatrix;
using dense::Tolerance;

BlockStructure BlockStructure::from_sizes(const std::vector<int>& sizes) {
  if (sizes.empty()) throw ShapeMismatch("a frame needs at least one block");
  BlockStructure b;
  b.r = static_cast<int>(sizes.size());
  b.sizes = sizes;
  b.offsets.resize(sizes.size());
  int off = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw ShapeMismatch("block sizes must be positive");
    b.offsets[i] = off;
    off += sizes[i];
  }
  b.n = off;
  return b;
}

Subspace::Subspace(int rows, int cols, std::vector<dense::Mat> orthonormal_basis)
    : rows_(rows), cols_(cols), basis_(std::move(orthonormal_basis)) {
  for (const auto& e : basis_) {
    if (e.rows() != rows_ || e.cols() != cols_) {
      throw ShapeMismatch("basis element shape does not match subspace shape");
    }
  }
}

Mat Subspace::project(const Mat& m) const {
  if (m.rows() != rows_ || m.cols() != cols_) {
    throw ShapeMismatch("projection input shape does not match subspace shape");
  }
  Mat p(rows_, cols_);
  for (const auto& e : basis_) p += dense::inner(e, m) * e;
  return p;
}

std::vector<double> Subspace::coords(const Mat& m) const {
  std::vector<double> c;
  c.reserve(basis_.size());
  for (const auto& e : basis_) c.push_back(dense::inner(e, m));
  return c;
}

double Subspace::residual(const Mat& m) const { return dense::frobenius_norm(m - project(m)); }

Subspace Subspace::diagonal(int n) {
  Mat e = (1.0 / std::sqrt(static_cast<double>(n))) * Mat::identity(n);
  return Subspace(n, n, {std::move(e)});
}

struct IshiFrame::Data {
  BlockStructure blocks;
  std::vector<Subspace> spaces;  // flat upper-triangular pair storage
  Tolerance tol;
  AxiomReport report;
};

namespace {

// Flat index of the pair (i, j), 1 ≤ i < j ≤ r.
std::size_t pair_index(int r, int i, int j) {
  const std::size_t row_start =
      static_cast<std::size_t>(i - 1) * r - static_cast<std::size_t>(i) * (i - 1) / 2;
  return row_start + static_cast<std::size_t>(j - i - 1);
}

const IshiFrame::Data& deref(const std::shared_ptr<const IshiFrame::Data>& d) {
  if (!d) throw Error("operation on an empty frame");
  return *d;
}

AxiomReport run_axiom_check(const BlockStructure& blocks, const std::vector<Subspace>& spaces,
                            const Tolerance& tol) {
  AxiomReport report;
  const int r = blocks.r;
  const double thr = tol.threshold(1.0);
  auto space = [&](int i, int j) -> const Subspace& { return spaces[pair_index(r, i, j)]; };
  // [V3], polarized: AᵀB + BᵀA ∈ ℝ·I_{n_j} for A, B ∈ V_ij.
  for (int i = 1; i <= r; ++i) {
    for (int j = i + 1; j <= r; ++j) {
      const auto& basis = space(i, j).basis();
      const int nj = blocks.size(j);
      for (int p = 0; p < static_cast<int>(basis.size()); ++p) {
        for (int q = p; q < static_cast<int>(basis.size()); ++q) {
          Mat m = basis[p].transposed() * basis[q] + basis[q].transposed() * basis[p];
          double tr = 0.0;
          for (int d = 0; d < nj; ++d) tr += m(d, d);
          const double c = tr / nj;
          for (int d = 0; d < nj; ++d) m(d, d) -= c;
          const double res = dense::frobenius_norm(m);
          if (res > thr) {
            report.violations.push_back({Axiom::V3, i, j, j, p, q, res});
          }
        }
      }
    }
  }
  // [V1] A·B ∈ V_ik and [V2] Aᵀ·B ∈ V_jk over strict triples.
  for (int i = 1; i <= r; ++i) {
    for (int j = i + 1; j <= r; ++j) {
      for (int k = j + 1; k <= r; ++k) {
        const auto& bij = space(i, j).basis();
        const auto& bjk = space(j, k).basis();
        const auto& bik = space(i, k).basis();
        for (int p = 0; p < static_cast<int>(bij.size()); ++p) {
          for (int q = 0; q < static_cast<int>(bjk.size()); ++q) {
            const double res = space(i, k).residual(bij[p] * bjk[q]);
            if (res > thr) report.violations.push_back({Axiom::V1, i, j, k, p, q, res});
          }
          for (int q = 0; q < static_cast<int>(bik.size()); ++q) {
            const double res = space(j, k).residual(bij[p].transposed() * bik[q]);
            if (res > thr) report.violations.push_back({Axiom::V2, i, j, k, p, q, res});
          }
        }
      }
    }
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const AxiomViolation& a, const AxiomViolation& b) {
              return std::tie(a.i, a.j, a.k, a.axiom, a.p, a.q) <
                     std::tie(b.i, b.j, b.k, b.axiom, b.p, b.q);
            });
  return report;
}

bool nearly_orthonormal(const std::vector<Mat>& gens) {
  constexpr double kTight = 1e-12;
  for (std::size_t p = 0; p < gens.size(); ++p) {
    for (std::size_t q = p; q < gens.size(); ++q) {
      const double want = p == q ? 1.0 : 0.0;
      if (std::abs(dense::inner(gens[p], gens[q]) - want) > kTight) return false;
    }
  }
  return true;
}

}  // namespace

const BlockStructure& IshiFrame::blocks() const { return deref(d_).blocks; }

const Subspace& IshiFrame::subspace(int i, int j) const {
  const auto& d = deref(d_);
  if (i < 1 || j <= i || j > d.blocks.r) {
    throw ShapeMismatch("subspace index pair out of range");
  }
  return d.spaces[pair_index(d.blocks.r, i, j)];
}

Subspace IshiFrame::subspace_any(int i, int j) const {
  if (i == j) return Subspace::diagonal(blocks().size(i));
  return subspace(i, j);
}

int IshiFrame::ambient_dim() const {
  const auto& d = deref(d_);
  int dim = d.blocks.r;
  for (const auto& s : d.spaces) dim += s.dim();
  return dim;
}

bool IshiFrame::axioms_pass() const { return deref(d_).report.passed(); }

const AxiomReport& IshiFrame::construction_report() const { return deref(d_).report; }

const Tolerance& IshiFrame::tolerance() const { return deref(d_).tol; }

IshiFrame make_frame(const std::vector<int>& sizes,
                     const std::map<std::pair<int, int>, std::vector<Mat>>& generators,
                     const Tolerance& tol) {
  auto data = std::make_shared<IshiFrame::Data>();
  data->blocks = BlockStructure::from_sizes(sizes);
  data->tol = tol;
  const int r = data->blocks.r;
  data->spaces.reserve(pair_index(r, r - 1, r) + 1);
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      data->spaces.emplace_back(data->blocks.size(i), data->blocks.size(j));

  std::vector<std::string> warnings;
  for (const auto& [key, gens] : generators) {
    const auto [i, j] = key;
    if (i < 1 || j <= i || j > r) {
      throw ShapeMismatch("generator key (" + std::to_string(i) + "," + std::to_string(j) +
                          ") out of range");
    }
    const int ni = data->blocks.size(i);
    const int nj = data->blocks.size(j);
    for (const auto& g : gens) {
      if (g.rows() != ni || g.cols() != nj) {
        throw ShapeMismatch("generator for (" + std::to_string(i) + "," + std::to_string(j) +
                            ") has shape " + std::to_string(g.rows()) + "x" +
                            std::to_string(g.cols()) + ", expected " + std::to_string(ni) + "x" +
                            std::to_string(nj));
      }
    }
    std::vector<Mat> basis;
    if (nearly_orthonormal(gens)) {
      basis = gens;  // adopt bit-for-bit so exported frames round-trip exactly
    } else {
      for (std::size_t idx = 0; idx < gens.size(); ++idx) {
        Mat v = gens[idx];
        for (int pass = 0; pass < 2; ++pass) {
          for (const auto& e : basis) v -= dense::inner(e, v) * e;
        }
        const double nv = dense::frobenius_norm(v);
        if (nv <= tol.threshold(dense::frobenius_norm(gens[idx]))) {
          warnings.push_back("dropped dependent generator " + std::to_string(idx + 1) +
                             " of V(" + std::to_string(i) + "," + std::to_string(j) + ")");
          continue;
        }
        basis.push_back((1.0 / nv) * v);
      }
    }
    data->spaces[pair_index(r, i, j)] = Subspace(ni, nj, std::move(basis));
  }

  data->report = run_axiom_check(data->blocks, data->spaces, tol);
  data->report.warnings = std::move(warnings);
  IshiFrame f;
  f.d_ = std::move(data);
  return f;
}

AxiomReport verify_axioms(const IshiFrame& f, const Tolerance& tol) {
  AxiomReport report = run_axiom_check(f.blocks(), [&] {
    std::vector<Subspace> spaces;
    const int r = f.rank();
    for (int i = 1; i <= r; ++i)
      for (int j = i + 1; j <= r; ++j) spaces.push_back(f.subspace(i, j));
    return spaces;
  }(), tol);
  report.warnings = f.construction_report().warnings;
  return report;
}

double span_residual(const IshiFrame& f, const SymMatrix& s) {
  if (s.order() != f.order()) throw DimensionMismatch("point order does not match frame order");
  return dense::frobenius_norm(s - project_onto_V(f, s).matrix);
}

BlockElement project_onto_V(const IshiFrame& f, const SymMatrix& s) {
  if (s.order() != f.order()) throw DimensionMismatch("point order does not match frame order");
  const auto& blocks = f.blocks();
  SymMatrix p(blocks.n);
  for (int i = 1; i <= blocks.r; ++i) {
    const int ni = blocks.size(i);
    const int oi = blocks.offset(i);
    double tr = 0.0;
    for (int d = 0; d < ni; ++d) tr += s(oi + d, oi + d);
    const double c = tr / ni;
    for (int d = 0; d < ni; ++d) p.set(oi + d, oi + d, c);
  }
  for (int i = 1; i <= blocks.r; ++i) {
    for (int j = i + 1; j <= blocks.r; ++j) {
      const Mat m = s.block(blocks.offset(i), blocks.offset(j), blocks.size(i), blocks.size(j));
      p.set_block(blocks.offset(i), blocks.offset(j), f.subspace(i, j).project(m));
    }
  }
  return {f, std::move(p)};
}

BlockOperator compose(const BlockOperator& a, const BlockOperator& b) {
  if (b.target != a.source) throw DimensionMismatch("operator composition source/target mismatch");
  return {b.source, a.target, a.matrix * b.matrix};
}

namespace {

void require_membership(const IshiFrame& f, int i, int j, const Mat& a) {
  const int ni = f.blocks().size(i);
  const int nj = f.blocks().size(j);
  if (a.rows() != ni || a.cols() != nj) {
    throw ShapeMismatch("operator symbol has the wrong block shape");
  }
  const double res = f.subspace(i, j).residual(a);
  if (res > f.tolerance().threshold(dense::frobenius_norm(a))) {
    throw NotInSpan("operator symbol is not in its subspace (residual " + std::to_string(res) +
                    ")");
  }
}

void require_axioms(const IshiFrame& f) {
  if (!f.axioms_pass()) {
    throw AxiomNotVerified("frame failed the axiom check; operators are undefined");
  }
}

BlockOperator build_operator(const Subspace& dom, const Subspace& cod,
                             std::pair<int, int> source, std::pair<int, int> target,
                             const std::function<Mat(const Mat&)>& act, const Tolerance& tol) {
  Mat m(cod.dim(), dom.dim());
  for (int q = 0; q < dom.dim(); ++q) {
    const Mat image = act(dom.basis()[q]);
    const double res = cod.residual(image);
    if (res > tol.threshold(1.0) * 10.0) {
      throw CertificationError("operator image leaves the target subspace (residual " +
                               std::to_string(res) + ")");
    }
    const auto c = cod.coords(image);
    for (int p = 0; p < cod.dim(); ++p) m(p, q) = c[static_cast<std::size_t>(p)];
  }
  return {source, target, std::move(m)};
}

}  // namespace

BlockOperator left_mult(const IshiFrame& f, int i, int j, const Mat& a, int l) {
  require_axioms(f);
  if (i < 1 || j <= i || j > f.rank() || l < j || l > f.rank()) {
    throw ShapeMismatch("left_mult indices must satisfy 1 ≤ i < j ≤ l ≤ r");
  }
  require_membership(f, i, j, a);
  const Subspace dom = f.subspace_any(j, l);
  const Subspace cod = f.subspace_any(i, l);
  return build_operator(dom, cod, {j, l}, {i, l},
                        [&](const Mat& b) { return a * b; }, f.tolerance());
}

BlockOperator right_mult(const IshiFrame& f, int i, int j, const Mat& a, int l) {
  require_axioms(f);
  if (i < 1 || j <= i || j > f.rank() || l < 1 || l > i) {
    throw ShapeMismatch("right_mult indices must satisfy 1 ≤ l ≤ i < j ≤ r");
  }
  require_membership(f, i, j, a);
  const Subspace dom = f.subspace_any(l, i);
  const Subspace cod = f.subspace_any(l, j);
  return build_operator(dom, cod, {l, i}, {l, j},
                        [&](const Mat& b) { return b * a; }, f.tolerance());
}

Mat left_adjoint_apply(const IshiFrame& f, int i, int j, const Mat& a, int l, const Mat& y) {
  require_axioms(f);
  if (i < 1 || j <= i || j > f.rank() || l < j || l > f.rank()) {
    throw ShapeMismatch("left adjoint indices must satisfy 1 ≤ i < j ≤ l ≤ r");
  }
  return f.subspace_any(j, l).project(a.transposed() * y);
}

Mat right_adjoint_apply(const IshiFrame& f, int i, int j, const Mat& a, int l, const Mat& y) {
  require_axioms(f);
  if (i < 1 || j <= i || j > f.rank() || l < 1 || l > i) {
    throw ShapeMismatch("right adjoint indices must satisfy 1 ≤ l ≤ i < j ≤ r");
  }
  return f.subspace_any(l, i).project(y * a.transposed());
}

}  // namespace ishi::frame
