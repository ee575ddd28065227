#include "ishi/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ishi::dense {

namespace {

void require_same_shape(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("matrix shapes differ: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

}  // namespace

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<double>>& rows) {
  const int nr = static_cast<int>(rows.size());
  const int nc = nr == 0 ? 0 : static_cast<int>(rows[0].size());
  Mat m(nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (static_cast<int>(rows[i].size()) != nc) {
      throw ShapeMismatch("ragged rows in matrix literal");
    }
    for (int j = 0; j < nc; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
  if (r0 < 0 || c0 < 0 || nr < 0 || nc < 0 || r0 + nr > rows_ || c0 + nc > cols_) {
    throw ShapeMismatch("block range out of bounds");
  }
  Mat b(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

Mat& Mat::operator+=(const Mat& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("product shapes incompatible: " + std::to_string(a.cols()) +
                            " vs " + std::to_string(b.rows()));
  }
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

double inner(const Mat& a, const Mat& b) {
  require_same_shape(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) s += a.data()[k] * b.data()[k];
  return s;
}

double frobenius_norm(const Mat& a) { return std::sqrt(inner(a, a)); }

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const Mat m = Mat::from_rows(rows);
  if (m.rows() != m.cols()) throw ShapeMismatch("symmetric literal must be square");
  SymMatrix x(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) throw ShapeMismatch("symmetric literal has asymmetric entries");
      x.set(i, j, m(i, j));
    }
  }
  return x;
}

SymMatrix SymMatrix::from_mat_symmetrized(const Mat& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("cannot symmetrize a non-square matrix");
  SymMatrix x(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j) x.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return x;
}

Mat SymMatrix::to_mat() const {
  Mat m(order_, order_);
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

Mat SymMatrix::block(int r0, int c0, int nr, int nc) const {
  Mat m(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void SymMatrix::set_block(int r0, int c0, const Mat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) set(r0 + i, c0 + j, m(i, j));
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (order_ != o.order_) throw DimensionMismatch("symmetric orders differ");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  if (order_ != o.order_) throw DimensionMismatch("symmetric orders differ");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

UpperTriMatrix UpperTriMatrix::identity(int n) {
  UpperTriMatrix t(n);
  for (int i = 0; i < n; ++i) t.set(i, i, 1.0);
  return t;
}

void UpperTriMatrix::set(int i, int j, double v) {
  if (i > j) throw ShapeMismatch("write below the diagonal of an upper triangular matrix");
  a_[static_cast<std::size_t>(i) * order_ + j] = v;
}

Mat UpperTriMatrix::to_mat() const {
  Mat m(order_, order_);
  for (int i = 0; i < order_; ++i)
    for (int j = i; j < order_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

Mat UpperTriMatrix::block(int r0, int c0, int nr, int nc) const {
  Mat m(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void UpperTriMatrix::set_block(int r0, int c0, const Mat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (r0 + i > c0 + j) {
        if (m(i, j) != 0.0) {
          throw ShapeMismatch("block write reaches below the diagonal");
        }
        continue;
      }
      set(r0 + i, c0 + j, m(i, j));
    }
}

UpperTriMatrix operator*(const UpperTriMatrix& a, const UpperTriMatrix& b) {
  if (a.order() != b.order()) throw DimensionMismatch("triangular orders differ");
  const int n = a.order();
  UpperTriMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = i; k <= j; ++k) s += a(i, k) * b(k, j);
      c.set(i, j, s);
    }
  return c;
}

UpperTriMatrix inverse(const UpperTriMatrix& t) {
  const int n = t.order();
  UpperTriMatrix inv(n);
  for (int i = 0; i < n; ++i) {
    if (t(i, i) == 0.0) throw NotInGroup("triangular matrix with zero diagonal has no inverse");
    inv.set(i, i, 1.0 / t(i, i));
  }
  // Solve T·inv = I column by column, upward substitution.
  for (int j = 0; j < n; ++j) {
    for (int i = j - 1; i >= 0; --i) {
      double s = 0.0;
      for (int k = i + 1; k <= j; ++k) s += t(i, k) * inv(k, j);
      inv.set(i, j, -s / t(i, i));
    }
  }
  return inv;
}

SymMatrix gram(const UpperTriMatrix& t) {
  const int n = t.order();
  SymMatrix x(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k <= i; ++k) s += t(k, i) * t(k, j);
      x.set(i, j, s);
    }
  return x;
}

namespace {

double max_diagonal(const SymMatrix& x) {
  double m = 0.0;
  for (int i = 0; i < x.order(); ++i) m = std::max(m, x(i, i));
  return m;
}

}  // namespace

UpperTriMatrix cholesky_type(const SymMatrix& x, const Tolerance& tol) {
  const int n = x.order();
  const double scale = std::max(max_diagonal(x), 0.0);
  const double thr = tol.threshold(scale);
  const double row_bound = std::sqrt(thr * scale) + tol.abs_eps;
  UpperTriMatrix t(n);
  for (int i = 0; i < n; ++i) {
    double d = x(i, i);
    for (int k = 0; k < i; ++k) d -= t(k, i) * t(k, i);
    if (d > thr) {
      const double tii = std::sqrt(d);
      t.set(i, i, tii);
      for (int j = i + 1; j < n; ++j) {
        double s = x(i, j);
        for (int k = 0; k < i; ++k) s -= t(k, i) * t(k, j);
        t.set(i, j, s / tii);
      }
    } else if (d < -thr) {
      throw NotPSD("pivot " + std::to_string(d) + " at index " + std::to_string(i) +
                   " is negative");
    } else {
      // Zero pivot: the row is dropped. Sound only when the residual row
      // entries vanish as PSD demands (|S_ij| ≤ √(S_ii·S_jj)).
      for (int j = i + 1; j < n; ++j) {
        double s = x(i, j);
        for (int k = 0; k < i; ++k) s -= t(k, i) * t(k, j);
        if (std::abs(s) > row_bound) {
          throw NotPSD("zero pivot at index " + std::to_string(i) +
                       " with non-negligible residual row entry " + std::to_string(s));
        }
      }
    }
  }
  return t;
}

bool is_positive_definite(const SymMatrix& x, const Tolerance& tol) {
  const int n = x.order();
  const double thr = tol.threshold(std::max(max_diagonal(x), 0.0));
  // Standard Cholesky in place of a scratch triangle; bail on the first
  // pivot that is not strictly positive.
  UpperTriMatrix t(n);
  for (int i = 0; i < n; ++i) {
    double d = x(i, i);
    for (int k = 0; k < i; ++k) d -= t(k, i) * t(k, i);
    if (d <= thr) return false;
    const double tii = std::sqrt(d);
    t.set(i, i, tii);
    for (int j = i + 1; j < n; ++j) {
      double s = x(i, j);
      for (int k = 0; k < i; ++k) s -= t(k, i) * t(k, j);
      t.set(i, j, s / tii);
    }
  }
  return true;
}

int matrix_rank(const SymMatrix& x, const Tolerance& tol) {
  const int n = x.order();
  Mat a = x.to_mat();
  double max_abs = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) max_abs = std::max(max_abs, std::abs(a(i, j)));
  const double thr = tol.threshold(max_abs);
  std::vector<bool> row_used(n, false), col_used(n, false);
  int rank = 0;
  for (;;) {
    int p = -1, q = -1;
    double best = thr;
    for (int i = 0; i < n; ++i) {
      if (row_used[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (col_used[j]) continue;
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          p = i;
          q = j;
        }
      }
    }
    if (p < 0) break;
    ++rank;
    row_used[p] = true;
    col_used[q] = true;
    for (int i = 0; i < n; ++i) {
      if (row_used[i] || a(i, q) == 0.0) continue;
      const double f = a(i, q) / a(p, q);
      for (int j = 0; j < n; ++j) a(i, j) -= f * a(p, j);
    }
  }
  return rank;
}

double frobenius_inner(const SymMatrix& x, const SymMatrix& y) {
  if (x.order() != y.order()) {
    throw DimensionMismatch("inner product orders differ: " + std::to_string(x.order()) +
                            " vs " + std::to_string(y.order()));
  }
  double s = 0.0;
  for (int i = 0; i < x.order(); ++i)
    for (int j = 0; j < x.order(); ++j) s += x(i, j) * y(i, j);
  return s;
}

double frobenius_norm(const SymMatrix& x) { return std::sqrt(frobenius_inner(x, x)); }

}  // namespace ishi::dense
