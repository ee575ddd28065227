#include <cmath>
#include <random>

#include "doctest.h"
#include "ishi/dense.hpp"

using namespace ishi;
using namespace ishi::dense;

namespace {

SymMatrix random_gram(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = u(rng);
  return SymMatrix::from_mat_symmetrized(g.transposed() * g);
}

}  // namespace

TEST_CASE("cholesky_type identity") {
  const Tolerance tol;
  const auto t = cholesky_type(SymMatrix::identity(3), tol);
  CHECK(t == UpperTriMatrix::identity(3));
}

TEST_CASE("cholesky_type 2x2 exact factor") {
  const Tolerance tol;
  const auto x = SymMatrix::from_rows({{4, 2}, {2, 2}});
  const auto t = cholesky_type(x, tol);
  CHECK(t(0, 0) == doctest::Approx(2.0));
  CHECK(t(0, 1) == doctest::Approx(1.0));
  CHECK(t(1, 1) == doctest::Approx(1.0));
  CHECK(frobenius_norm(gram(t) - x) <= 1e-12);
}

TEST_CASE("cholesky_type rank-1 zero-row rule") {
  const Tolerance tol;
  const auto x = SymMatrix::from_rows({{1, 0, 1}, {0, 0, 0}, {1, 0, 1}});
  const auto t = cholesky_type(x, tol);
  CHECK(t(0, 0) == doctest::Approx(1.0));
  CHECK(t(0, 1) == doctest::Approx(0.0));
  CHECK(t(0, 2) == doctest::Approx(1.0));
  for (int j = 1; j < 3; ++j) {
    CHECK(t(1, j) == 0.0);
    if (j == 2) CHECK(t(2, j) == 0.0);
  }
  CHECK(frobenius_norm(gram(t) - x) <= 1e-12);
}

TEST_CASE("cholesky_type rejects indefinite inputs") {
  const Tolerance tol;
  CHECK_THROWS_AS(cholesky_type(SymMatrix::from_rows({{0, 1}, {1, 0}}), tol), NotPSD);
  CHECK_THROWS_AS(cholesky_type(SymMatrix::from_rows({{1, 2}, {2, 1}}), tol), NotPSD);
  CHECK_THROWS_AS(cholesky_type(SymMatrix::from_rows({{1, 0}, {0, -1}}), tol), NotPSD);
}

TEST_CASE("cholesky_type random PSD round-trip and row rule") {
  const Tolerance tol;
  std::mt19937_64 rng(20240901);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const int rows = 1 + static_cast<int>(rng() % 8);  // rows < n gives singular X
    const auto x = random_gram(rows, n, rng);
    const auto t = cholesky_type(x, tol);
    CHECK(frobenius_norm(gram(t) - x) <= 1e-8 * (1.0 + frobenius_norm(x)));
    for (int i = 0; i < n; ++i) {
      if (t(i, i) != 0.0) continue;
      for (int j = i; j < n; ++j) CHECK(t(i, j) == 0.0);
    }
  }
}

TEST_CASE("is_positive_definite basics") {
  const Tolerance tol;
  CHECK(is_positive_definite(SymMatrix::identity(2), tol));
  CHECK_FALSE(is_positive_definite(SymMatrix::from_rows({{1, 0}, {0, 0}}), tol));
  // Pivots 2, 2, 1 under hand elimination.
  CHECK(is_positive_definite(SymMatrix::from_rows({{2, 0, 1}, {0, 2, 1}, {1, 1, 2}}), tol));
}

TEST_CASE("is_positive_definite random perturbed and deficient grams") {
  const Tolerance tol;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    auto x = random_gram(n, n, rng);
    auto shifted = x + 1e-3 * SymMatrix::identity(n);
    CHECK(is_positive_definite(shifted, tol));
    const auto deficient = random_gram(n - 1, n, rng);  // fewer rows than columns
    CHECK_FALSE(is_positive_definite(deficient, tol));
  }
}

TEST_CASE("matrix_rank") {
  const Tolerance tol;
  CHECK(matrix_rank(SymMatrix(3), tol) == 0);
  CHECK(matrix_rank(SymMatrix::identity(4), tol) == 4);
  CHECK(matrix_rank(SymMatrix::from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}), tol) == 1);
  // Indefinite with zero diagonal: full pivoting must still see rank 2.
  CHECK(matrix_rank(SymMatrix::from_rows({{0, 1}, {1, 0}}), tol) == 2);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Mat v(1, n);
    double norm2 = 0.0;
    while (norm2 < 0.1) {
      for (int j = 0; j < n; ++j) v(0, j) = u(rng);
      norm2 = inner(v, v);
    }
    const auto outer = SymMatrix::from_mat_symmetrized(v.transposed() * v);
    CHECK(matrix_rank(outer, tol) == 1);
  }
}

TEST_CASE("frobenius_inner") {
  CHECK(frobenius_inner(SymMatrix::identity(3), SymMatrix::identity(3)) == doctest::Approx(3.0));
  CHECK(frobenius_inner(SymMatrix::from_rows({{1, 0}, {0, 0}}),
                        SymMatrix::from_rows({{0, 0}, {0, 1}})) == doctest::Approx(0.0));
  CHECK(frobenius_inner(SymMatrix::from_rows({{1, 2}, {2, 0}}),
                        SymMatrix::from_rows({{0, 1}, {1, 3}})) == doctest::Approx(4.0));
  CHECK_THROWS_AS(frobenius_inner(SymMatrix::identity(2), SymMatrix::identity(3)),
                  DimensionMismatch);
}

TEST_CASE("triangular product, inverse and gram") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    UpperTriMatrix t(n);
    for (int i = 0; i < n; ++i) {
      t.set(i, i, 0.5 + std::abs(u(rng)));
      for (int j = i + 1; j < n; ++j) t.set(i, j, u(rng));
    }
    const auto inv = inverse(t);
    const auto prod = t * inv;
    CHECK(frobenius_norm(prod.to_mat() - Mat::identity(n)) <= 1e-10);
    const auto g = gram(t);
    CHECK(frobenius_norm(g.to_mat() - t.to_mat().transposed() * t.to_mat()) <= 1e-12);
  }
}
