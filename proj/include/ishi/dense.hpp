#pragma once

// Minimal dense numeric kernel for small symmetric matrices: factorizations,
// ranks, inner products, and the tolerance policy shared by all modules.
// Everything here is a pure value type; all operations are thread-safe.

#include <initializer_list>
#include <vector>

#include "ishi/errors.hpp"

namespace ishi::dense {

// Shared tolerance policy. A quantity of magnitude `scale` is treated as zero
// when it is ≤ abs_eps + rel_eps * scale. No operation hardcodes an epsilon.
struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-9;

  double threshold(double scale) const { return abs_eps + rel_eps * scale; }
};

// Dense rectangular matrix, row-major. Plumbing type for subspace basis
// elements, matrix blocks and operator matrices.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  static Mat identity(int n);
  // Builds from nested rows; all rows must have equal length.
  static Mat from_rows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return a_; }

  Mat transposed() const;
  Mat block(int r0, int c0, int nr, int nc) const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double s);

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);

// Trace inner product tr(AᵀB); requires equal shapes.
double inner(const Mat& a, const Mat& b);
double frobenius_norm(const Mat& a);

// Symmetric matrix of a given order. set() writes both (i,j) and (j,i), so the
// storage is symmetric exactly, never merely up to round-off.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int order)
      : order_(order), a_(static_cast<std::size_t>(order) * order, 0.0) {}

  static SymMatrix identity(int n);
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
  // Symmetrizes via (M + Mᵀ)/2; intended for products that are symmetric
  // mathematically but not bitwise.
  static SymMatrix from_mat_symmetrized(const Mat& m);

  int order() const { return order_; }

  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * order_ + j];
  }
  void set(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * order_ + j] = v;
    a_[static_cast<std::size_t>(j) * order_ + i] = v;
  }

  Mat to_mat() const;
  // Copies the nr×nc block with top-left corner (r0, c0).
  Mat block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Mat& m);

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  int order_ = 0;
  std::vector<double> a_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);

// Upper triangular matrix; entries strictly below the diagonal are zero by
// construction and set() rejects writes there.
class UpperTriMatrix {
 public:
  UpperTriMatrix() = default;
  explicit UpperTriMatrix(int order)
      : order_(order), a_(static_cast<std::size_t>(order) * order, 0.0) {}

  static UpperTriMatrix identity(int n);

  int order() const { return order_; }

  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * order_ + j];
  }
  void set(int i, int j, double v);

  Mat to_mat() const;
  Mat block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Mat& m);

  friend bool operator==(const UpperTriMatrix&, const UpperTriMatrix&) = default;

 private:
  int order_ = 0;
  std::vector<double> a_;
};

// Product of two upper triangular matrices (closed under multiplication).
UpperTriMatrix operator*(const UpperTriMatrix& a, const UpperTriMatrix& b);
// Inverse of an upper triangular matrix with nonzero diagonal (back substitution).
UpperTriMatrix inverse(const UpperTriMatrix& t);
// TᵀT as an exactly symmetric matrix.
SymMatrix gram(const UpperTriMatrix& t);

// Cholesky-type factorization X = TᵀT with T upper triangular, T_ii ≥ 0 and
// the zero-row rule: whenever a pivot falls below the tolerance threshold the
// entire row is zeroed. The rule is only sound when the residual row is itself
// negligible (PSD forces |S_ij| ≤ √(S_ii·S_jj)); otherwise NotPSD is raised,
// as it is for pivots below −threshold.
UpperTriMatrix cholesky_type(const SymMatrix& x, const Tolerance& tol);

// True iff a standard Cholesky factorization succeeds with every pivot
// strictly above the tolerance threshold.
bool is_positive_definite(const SymMatrix& x, const Tolerance& tol);

// Numerical rank: pivot count of a Gaussian elimination with full pivoting.
// Full pivoting keeps the count robust for indefinite symmetric inputs where
// diagonal pivoting would stall.
int matrix_rank(const SymMatrix& x, const Tolerance& tol);

// Trace inner product ⟨X, Y⟩ = tr(XᵀY); raises DimensionMismatch on unequal orders.
double frobenius_inner(const SymMatrix& x, const SymMatrix& y);

double frobenius_norm(const SymMatrix& x);

}  // namespace ishi::dense
