#include "ishi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ishi::geometry {

using dense::Mat;
using dense::SymMatrix;
using dense::Tolerance;
using dense::UpperTriMatrix;

TriangularElement make_triangular(const IshiFrame& f, const UpperTriMatrix& t) {
  if (t.order() != f.order()) {
    throw DimensionMismatch("triangular order does not match frame order");
  }
  const auto& blocks = f.blocks();
  const auto& tol = f.tolerance();
  double max_diag = 0.0;
  for (int d = 0; d < t.order(); ++d) max_diag = std::max(max_diag, std::abs(t(d, d)));
  const double thr = tol.threshold(max_diag);
  bool strict = true;
  for (int i = 1; i <= blocks.r; ++i) {
    const int oi = blocks.offset(i);
    const int ni = blocks.size(i);
    const double s = t(oi, oi);
    for (int d = 0; d < ni; ++d) {
      if (std::abs(t(oi + d, oi + d) - s) > thr) {
        throw NotInGroup("diagonal block " + std::to_string(i) + " is not scalar");
      }
      for (int e = d + 1; e < ni; ++e) {
        if (std::abs(t(oi + d, oi + e)) > thr) {
          throw NotInGroup("diagonal block " + std::to_string(i) + " is not scalar");
        }
      }
    }
    if (s < -thr) {
      throw NotInGroup("diagonal scalar of block " + std::to_string(i) + " is negative");
    }
    if (s <= thr) strict = false;
  }
  for (int i = 1; i <= blocks.r; ++i) {
    for (int j = i + 1; j <= blocks.r; ++j) {
      const Mat m = t.block(blocks.offset(i), blocks.offset(j), blocks.size(i), blocks.size(j));
      const double res = f.subspace(i, j).residual(m);
      if (res > tol.threshold(dense::frobenius_norm(m))) {
        throw NotInGroup("block (" + std::to_string(i) + "," + std::to_string(j) +
                         ") lies outside its subspace (residual " + std::to_string(res) + ")");
      }
    }
  }
  return {f, t, strict};
}

TriangularElement group_mul(const TriangularElement& a, const TriangularElement& b) {
  if (a.matrix.order() != b.matrix.order()) {
    throw DimensionMismatch("triangular orders differ");
  }
  return make_triangular(a.frame, a.matrix * b.matrix);
}

TriangularElement group_inverse(const TriangularElement& t) {
  if (!t.strictly_positive) {
    throw NotInGroup("only strictly positive triangular elements are invertible in the group");
  }
  return make_triangular(t.frame, dense::inverse(t.matrix));
}

Membership in_cone(const IshiFrame& f, const SymMatrix& x, const Tolerance& tol) {
  if (x.order() != f.order()) throw DimensionMismatch("point order does not match frame order");
  if (frame::span_residual(f, x) > tol.threshold(dense::frobenius_norm(x))) {
    return Membership::not_in_span;
  }
  if (dense::is_positive_definite(x, tol)) return Membership::interior;
  try {
    dense::cholesky_type(x, tol);
    return Membership::boundary;
  } catch (const NotPSD&) {
    return Membership::outside;
  }
}

BlockElement group_act(const TriangularElement& t, const BlockElement& x, Side side) {
  if (!t.strictly_positive) throw NotInGroup("group action requires an element of the group");
  if (t.matrix.order() != x.matrix.order()) {
    throw DimensionMismatch("element and point orders differ");
  }
  const IshiFrame& f = t.frame;
  const Mat tm = t.matrix.to_mat();
  if (side == Side::primal) {
    const SymMatrix s =
        SymMatrix::from_mat_symmetrized(tm.transposed() * (x.matrix.to_mat() * tm));
    const double res = frame::span_residual(f, s);
    if (res > 10.0 * f.tolerance().threshold(dense::frobenius_norm(s))) {
      throw CertificationError("primal action left the ambient span (residual " +
                               std::to_string(res) + ")");
    }
    return {f, s};
  }
  const SymMatrix s = SymMatrix::from_mat_symmetrized(tm * (x.matrix.to_mat() * tm.transposed()));
  return frame::project_onto_V(f, s);
}

namespace {

// Block elimination scheme: pivot block k clears row k of X(k); the factor is
// D^{1/2}·T(r−1)⁻¹⋯T(1)⁻¹ with T(k) unipotent, so every inverse is I − N.
UpperTriMatrix recursion_factor(const IshiFrame& f, const SymMatrix& x) {
  const auto& blocks = f.blocks();
  const int n = blocks.n;
  const int r = blocks.r;
  Mat xk = x.to_mat();
  Mat p = Mat::identity(n);
  for (int k = 1; k < r; ++k) {
    const int ok = blocks.offset(k);
    const int nk = blocks.size(k);
    const double pivot = xk(ok, ok);
    Mat tk = Mat::identity(n);
    Mat tk_inv = Mat::identity(n);
    for (int j = k + 1; j <= r; ++j) {
      const int oj = blocks.offset(j);
      const int nj = blocks.size(j);
      for (int a = 0; a < nk; ++a) {
        for (int b = 0; b < nj; ++b) {
          const double v = -xk(ok + a, oj + b) / pivot;
          tk(ok + a, oj + b) = v;
          tk_inv(ok + a, oj + b) = -v;
        }
      }
    }
    xk = tk.transposed() * (xk * tk);
    p = tk_inv * p;
  }
  UpperTriMatrix result(n);
  Mat d_sqrt(n, n);
  for (int i = 1; i <= r; ++i) {
    const double s = std::sqrt(xk(blocks.offset(i), blocks.offset(i)));
    for (int d = 0; d < blocks.size(i); ++d) {
      d_sqrt(blocks.offset(i) + d, blocks.offset(i) + d) = s;
    }
  }
  const Mat t = d_sqrt * p;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) result.set(i, j, t(i, j));
  return result;
}

}  // namespace

TriangularElement orbit_factor(const IshiFrame& f, const SymMatrix& x, const Tolerance& tol,
                               FactorMethod method) {
  if (in_cone(f, x, tol) != Membership::interior) {
    throw NotInterior("orbit factorization requires an interior point");
  }
  const UpperTriMatrix tm =
      method == FactorMethod::block_cholesky ? dense::cholesky_type(x, tol) : recursion_factor(f, x);
  try {
    return make_triangular(f, tm);
  } catch (const NotInGroup& e) {
    throw CertificationError(std::string("factor failed block certification: ") + e.what());
  }
}

FaceDescriptor minimal_face(const IshiFrame& f, const SymMatrix& x, const Tolerance& tol) {
  const Membership m = in_cone(f, x, tol);
  if (m != Membership::interior && m != Membership::boundary) {
    throw NotInClosure("minimal faces are defined for points of the closed cone only");
  }
  UpperTriMatrix t = dense::cholesky_type(x, tol);
  const auto& blocks = f.blocks();
  std::vector<int> bset;
  for (int i = 1; i <= blocks.r; ++i) {
    const int oi = blocks.offset(i);
    const int ni = blocks.size(i);
    int positive = 0;
    for (int d = 0; d < ni; ++d)
      if (t(oi + d, oi + d) > 0.0) ++positive;
    if (positive == ni) {
      bset.push_back(i);
    } else if (positive == 0) {
      for (int d = 0; d < ni; ++d) t.set(oi + d, oi + d, 1.0);
    } else {
      throw CertificationError("block " + std::to_string(i) +
                               " has mixed zero and positive pivots (tolerance cusp)");
    }
  }
  TriangularElement tri;
  try {
    tri = make_triangular(f, t);
  } catch (const NotInGroup& e) {
    throw CertificationError(std::string("face factor failed block certification: ") + e.what());
  }
  return {f, std::move(tri), std::move(bset), Side::primal};
}

BlockElement extreme_ray(const IshiFrame& f, const TriangularElement& t, int i, Side side) {
  if (!t.strictly_positive) throw NotInGroup("extreme rays take an element of the group");
  if (i < 1 || i > f.rank()) throw ShapeMismatch("block index out of range");
  const auto& blocks = f.blocks();
  const int oi = blocks.offset(i);
  const int ni = blocks.size(i);
  if (side == Side::primal) {
    const Mat row = t.matrix.block(oi, 0, ni, blocks.n);
    const SymMatrix g = SymMatrix::from_mat_symmetrized(row.transposed() * row);
    const double res = frame::span_residual(f, g);
    if (res > 10.0 * f.tolerance().threshold(dense::frobenius_norm(g))) {
      throw CertificationError("primal ray generator left the ambient span");
    }
    return {f, g};
  }
  const Mat col = t.matrix.block(0, oi, blocks.n, ni);
  return frame::project_onto_V(f, SymMatrix::from_mat_symmetrized(col * col.transposed()));
}

dense::SymMatrix block_indicator(const IshiFrame& f, const std::vector<int>& b) {
  const auto& blocks = f.blocks();
  SymMatrix m(blocks.n);
  for (int i : b) {
    if (i < 1 || i > blocks.r) throw ShapeMismatch("block index out of range");
    for (int d = 0; d < blocks.size(i); ++d) {
      m.set(blocks.offset(i) + d, blocks.offset(i) + d, 1.0);
    }
  }
  return m;
}

SpanProjector::SpanProjector(IshiFrame f, std::vector<int> b) : f_(std::move(f)), b_(std::move(b)) {
  std::sort(b_.begin(), b_.end());
  b_.erase(std::unique(b_.begin(), b_.end()), b_.end());
  mask_.assign(static_cast<std::size_t>(f_.rank()) + 1, false);
  for (int i : b_) {
    if (i < 1 || i > f_.rank()) throw ShapeMismatch("block index out of range");
    mask_[static_cast<std::size_t>(i)] = true;
  }
}

SymMatrix SpanProjector::apply(const SymMatrix& s) const {
  SymMatrix p = frame::project_onto_V(f_, s).matrix;
  const auto& blocks = f_.blocks();
  for (int i = 1; i <= blocks.r; ++i) {
    for (int j = i; j <= blocks.r; ++j) {
      if (mask_[static_cast<std::size_t>(i)] && mask_[static_cast<std::size_t>(j)]) continue;
      for (int a = 0; a < blocks.size(i); ++a) {
        for (int b = 0; b < blocks.size(j); ++b) {
          p.set(blocks.offset(i) + a, blocks.offset(j) + b, 0.0);
        }
      }
    }
  }
  return p;
}

int SpanProjector::dim() const {
  int d = static_cast<int>(b_.size());
  for (std::size_t a = 0; a < b_.size(); ++a) {
    for (std::size_t b = a + 1; b < b_.size(); ++b) {
      d += f_.dim(b_[a], b_[b]);
    }
  }
  return d;
}

SpanProjector face_span_projector(const IshiFrame& f, const std::vector<int>& b) {
  return SpanProjector(f, b);
}

int maximal_chain_rank(const IshiFrame& f) {
  if (!f.axioms_pass()) {
    throw AxiomNotVerified("chain rank is defined for axiom-passing frames");
  }
  int prev = 0;
  std::vector<int> b;
  for (int k = 1; k <= f.rank(); ++k) {
    b.push_back(k);
    const int d = face_span_projector(f, b).dim();
    if (d <= prev) throw CertificationError("face chain failed to grow strictly");
    prev = d;
  }
  return f.rank();
}

TriangularElement dual_orbit_factor(const IshiFrame& f, const SymMatrix& y, const Tolerance& tol) {
  if (y.order() != f.order()) throw DimensionMismatch("point order does not match frame order");
  if (frame::span_residual(f, y) > tol.threshold(dense::frobenius_norm(y))) {
    throw NotInSpan("dual factorization input does not lie in the ambient span");
  }
  const auto& blocks = f.blocks();
  double scale = 0.0;
  for (int d = 0; d < blocks.n; ++d) scale = std::max(scale, y(d, d));
  const double thr = tol.threshold(std::max(scale, 0.0));
  UpperTriMatrix t(blocks.n);
  for (int l = blocks.r; l >= 1; --l) {
    const int ol = blocks.offset(l);
    const int nl = blocks.size(l);
    double s = y(ol, ol);
    for (int m = l + 1; m <= blocks.r; ++m) {
      const Mat tlm = t.block(ol, blocks.offset(m), nl, blocks.size(m));
      s -= dense::inner(tlm, tlm) / nl;
    }
    if (s <= thr) {
      throw NotInterior("dual pivot of block " + std::to_string(l) +
                        " is not strictly positive; the point is not certified interior");
    }
    const double tl = std::sqrt(s);
    for (int d = 0; d < nl; ++d) t.set(ol + d, ol + d, tl);
    for (int i = l - 1; i >= 1; --i) {
      const int oi = blocks.offset(i);
      const int ni = blocks.size(i);
      Mat acc = y.block(oi, ol, ni, nl);
      for (int m = l + 1; m <= blocks.r; ++m) {
        const Mat tim = t.block(oi, blocks.offset(m), ni, blocks.size(m));
        const Mat tlm = t.block(ol, blocks.offset(m), nl, blocks.size(m));
        acc -= f.subspace(i, l).project(tim * tlm.transposed());
      }
      const Mat til = f.subspace(i, l).project((1.0 / tl) * acc);
      t.set_block(oi, ol, til);
    }
  }
  TriangularElement tri = make_triangular(f, t);
  const SymMatrix back =
      frame::project_onto_V(f, SymMatrix::from_mat_symmetrized(
                                   t.to_mat() * t.to_mat().transposed()))
          .matrix;
  const double res = dense::frobenius_norm(back - frame::project_onto_V(f, y).matrix);
  if (res > 10.0 * tol.threshold(1.0 + dense::frobenius_norm(y))) {
    throw CertificationError("dual factorization failed to reproduce its input (residual " +
                             std::to_string(res) + ")");
  }
  return tri;
}

}  // namespace ishi::geometry
