#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ishi/catalog.hpp"
#include "ishi/geometry.hpp"

using namespace ishi;
using namespace ishi::geometry;
using dense::Mat;
using dense::SymMatrix;
using dense::Tolerance;
using dense::UpperTriMatrix;
using frame::IshiFrame;

namespace {

UpperTriMatrix tri_from_rows(const std::vector<std::vector<double>>& rows) {
  UpperTriMatrix t(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j)
      t.set(static_cast<int>(i), static_cast<int>(j), rows[i][j]);
  return t;
}

const SymMatrix kBoundaryPoint = SymMatrix::from_rows({{1, 0, 1}, {0, 0, 0}, {1, 0, 1}});

std::vector<std::vector<int>> all_subsets(int r) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << r); ++mask) {
    std::vector<int> b;
    for (int i = 1; i <= r; ++i)
      if (mask & (1 << (i - 1))) b.push_back(i);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

TEST_CASE("cone membership classification on star3") {
  const IshiFrame f = catalog::star3();
  const Tolerance tol;
  CHECK(in_cone(f, SymMatrix::identity(3), tol) == Membership::interior);
  CHECK(in_cone(f, kBoundaryPoint, tol) == Membership::boundary);
  SymMatrix neg = SymMatrix::identity(3);
  neg.set(2, 2, -1.0);
  CHECK(in_cone(f, neg, tol) == Membership::outside);
  SymMatrix off(3);
  off.set(0, 0, 1.0);
  off.set(1, 1, 1.0);
  off.set(2, 2, 1.0);
  off.set(0, 1, 0.5);  // V_12 is trivial
  CHECK(in_cone(f, off, tol) == Membership::not_in_span);
}

TEST_CASE("make_triangular validates and flags positivity") {
  const IshiFrame f = catalog::star3();
  const auto t = make_triangular(f, tri_from_rows({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}}));
  CHECK(t.strictly_positive);
  CHECK(t.diag_scalar(1) == doctest::Approx(1.0));
  // Off-pattern entry (V_12 trivial).
  CHECK_THROWS_AS(make_triangular(f, tri_from_rows({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}})),
                  NotInGroup);
  // Negative diagonal scalar.
  CHECK_THROWS_AS(make_triangular(f, tri_from_rows({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}})),
                  NotInGroup);
  // Zero scalar with entries left in its row stays in the closure.
  const auto closure = make_triangular(f, tri_from_rows({{0, 0, 1}, {0, 0, 1}, {0, 0, 1}}));
  CHECK_FALSE(closure.strictly_positive);
}

TEST_CASE("make_triangular requires scalar diagonal blocks") {
  const IshiFrame f = catalog::lorentz(2);
  UpperTriMatrix t = UpperTriMatrix::identity(3);
  t.set(1, 1, 2.0);  // breaks the scalar structure of block 1 (size 2)
  CHECK_THROWS_AS(make_triangular(f, t), NotInGroup);
}

TEST_CASE("group multiplication and inverse") {
  const IshiFrame f = catalog::witness3();
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 25; ++rep) {
    const auto t = catalog::random_triangular(f, rng);
    const auto u = catalog::random_triangular(f, rng);
    const auto tu = group_mul(t, u);
    CHECK(dense::frobenius_norm((t.matrix * u.matrix).to_mat() - tu.matrix.to_mat()) <= 1e-12);
    const auto inv = group_inverse(t);
    const auto id = group_mul(t, inv);
    CHECK(dense::frobenius_norm(id.matrix.to_mat() - Mat::identity(f.order())) <= 1e-9);
  }
  const auto closure = make_triangular(catalog::star3(),
                                       tri_from_rows({{0, 0, 1}, {0, 0, 1}, {0, 0, 1}}));
  CHECK_THROWS_AS(group_inverse(closure), NotInGroup);
}

TEST_CASE("group action composes contravariantly on the primal side") {
  std::mt19937_64 rng(13);
  for (const auto& nf : catalog::homogeneous_catalog()) {
    const auto t = catalog::random_triangular(nf.frame, rng);
    const auto u = catalog::random_triangular(nf.frame, rng);
    const frame::BlockElement x{nf.frame, catalog::random_interior_point(nf.frame, rng)};
    const auto lhs = group_act(t, group_act(u, x, Side::primal), Side::primal);
    const auto rhs = group_act(group_mul(u, t), x, Side::primal);
    CHECK(dense::frobenius_norm(lhs.matrix - rhs.matrix) <=
          1e-8 * (1.0 + dense::frobenius_norm(rhs.matrix)));
  }
}

TEST_CASE("group action composes covariantly on the dual side") {
  std::mt19937_64 rng(17);
  for (const auto& nf : catalog::homogeneous_catalog()) {
    const auto t = catalog::random_triangular(nf.frame, rng);
    const auto u = catalog::random_triangular(nf.frame, rng);
    const frame::BlockElement y{nf.frame, catalog::random_dual_interior_point(nf.frame, rng)};
    const auto lhs = group_act(t, group_act(u, y, Side::dual), Side::dual);
    const auto rhs = group_act(group_mul(t, u), y, Side::dual);
    CHECK(dense::frobenius_norm(lhs.matrix - rhs.matrix) <=
          1e-8 * (1.0 + dense::frobenius_norm(rhs.matrix)));
  }
}

TEST_CASE("orbit factorization round-trips by both methods") {
  std::mt19937_64 rng(19);
  const Tolerance tol;
  for (const auto& nf : catalog::homogeneous_catalog()) {
    for (int rep = 0; rep < 20; ++rep) {
      const SymMatrix x = catalog::random_interior_point(nf.frame, rng);
      const auto tc = orbit_factor(nf.frame, x, tol, FactorMethod::block_cholesky);
      const auto tr = orbit_factor(nf.frame, x, tol, FactorMethod::recursion);
      const double scale = 1.0 + dense::frobenius_norm(x);
      CHECK(dense::frobenius_norm(dense::gram(tc.matrix) - x) <= 1e-8 * scale);
      CHECK(dense::frobenius_norm(dense::gram(tr.matrix) - x) <= 1e-8 * scale);
      // Uniqueness: the two factors coincide.
      CHECK(dense::frobenius_norm(tc.matrix.to_mat() - tr.matrix.to_mat()) <= 1e-7 * scale);
      CHECK(tc.strictly_positive);
    }
  }
}

TEST_CASE("orbit factorization rejects non-interior points") {
  const IshiFrame f = catalog::star3();
  const Tolerance tol;
  CHECK_THROWS_AS(orbit_factor(f, kBoundaryPoint, tol), NotInterior);
  SymMatrix neg = SymMatrix::identity(3);
  neg.set(2, 2, -1.0);
  CHECK_THROWS_AS(orbit_factor(f, neg, tol), NotInterior);
}

TEST_CASE("minimal face of the identity and of a rank-1 point") {
  const IshiFrame f = catalog::star3();
  const Tolerance tol;
  const auto top = minimal_face(f, SymMatrix::identity(3), tol);
  CHECK(top.indices == std::vector<int>{1, 2, 3});
  CHECK(top.face_rank() == 3);
  const auto low = minimal_face(f, kBoundaryPoint, tol);
  CHECK(low.indices == std::vector<int>{1});
  CHECK(low.t.strictly_positive);
  const auto ray = extreme_ray(f, low.t, 1, Side::primal);
  CHECK(dense::frobenius_norm(ray.matrix - kBoundaryPoint) <= 1e-10);
  SymMatrix neg = SymMatrix::identity(3);
  neg.set(2, 2, -1.0);
  CHECK_THROWS_AS(minimal_face(f, neg, tol), NotInClosure);
}

TEST_CASE("minimal face recovers the block set exhaustively") {
  std::mt19937_64 rng(23);
  const Tolerance tol;
  for (const auto& nf : catalog::homogeneous_catalog()) {
    const int r = nf.frame.rank();
    for (const auto& b : all_subsets(r)) {
      const auto t = catalog::random_triangular(nf.frame, rng);
      const frame::BlockElement ind{nf.frame, block_indicator(nf.frame, b)};
      const auto x = group_act(t, ind, Side::primal);
      const auto face = minimal_face(nf.frame, x.matrix, tol);
      CHECK(face.indices == b);
    }
  }
}

TEST_CASE("primal extreme rays have block rank and singleton faces") {
  std::mt19937_64 rng(29);
  const Tolerance tol;
  for (const auto& nf : catalog::homogeneous_catalog()) {
    const auto t = catalog::random_triangular(nf.frame, rng);
    for (int i = 1; i <= nf.frame.rank(); ++i) {
      const auto ray = extreme_ray(nf.frame, t, i, Side::primal);
      CHECK(dense::matrix_rank(ray.matrix, tol) == nf.frame.blocks().size(i));
      CHECK(minimal_face(nf.frame, ray.matrix, tol).indices == std::vector<int>{i});
    }
  }
}

TEST_CASE("dual extreme rays match the frozen rank-3 values") {
  const IshiFrame f = catalog::star3();
  const auto t = make_triangular(f, tri_from_rows({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}}));
  const auto u = make_triangular(f, tri_from_rows({{1, 0, -1}, {0, 1, -1}, {0, 0, 1}}));
  const auto rt = extreme_ray(f, t, 3, Side::dual);
  const auto ru = extreme_ray(f, u, 3, Side::dual);
  CHECK(dense::frobenius_norm(
            rt.matrix - SymMatrix::from_rows({{1, 0, 1}, {0, 1, 1}, {1, 1, 1}})) <= 1e-12);
  CHECK(dense::frobenius_norm(
            ru.matrix - SymMatrix::from_rows({{1, 0, -1}, {0, 1, -1}, {-1, -1, 1}})) <= 1e-12);
}

TEST_CASE("dual rays transport through the dual action") {
  std::mt19937_64 rng(31);
  for (const auto& nf : catalog::homogeneous_catalog()) {
    const auto t = catalog::random_triangular(nf.frame, rng);
    const auto w = catalog::random_triangular(nf.frame, rng);
    for (int i = 1; i <= nf.frame.rank(); ++i) {
      const auto ray = extreme_ray(nf.frame, t, i, Side::dual);
      const auto moved = group_act(w, ray, Side::dual);
      const auto direct = extreme_ray(nf.frame, group_mul(w, t), i, Side::dual);
      CHECK(dense::frobenius_norm(moved.matrix - direct.matrix) <=
            1e-8 * (1.0 + dense::frobenius_norm(direct.matrix)));
    }
  }
}

TEST_CASE("face span projector dimensions and masking") {
  const IshiFrame f = catalog::star3();
  const auto p13 = face_span_projector(f, {1, 3});
  CHECK(p13.dim() == 3);  // two diagonal blocks plus V_13
  CHECK(face_span_projector(f, {1, 2}).dim() == 2);
  CHECK(face_span_projector(f, {}).dim() == 0);
  SymMatrix ones(3);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) ones.set(i, j, 1.0);
  const auto masked = p13.apply(ones);
  CHECK(masked(0, 0) == doctest::Approx(1.0));
  CHECK(masked(2, 2) == doctest::Approx(1.0));
  CHECK(masked(0, 2) == doctest::Approx(1.0));
  CHECK(masked(1, 1) == 0.0);
  CHECK(masked(1, 2) == 0.0);
  // Idempotent.
  CHECK(dense::frobenius_norm(p13.apply(masked) - masked) <= 1e-12);
}

TEST_CASE("maximal chain rank equals the block count") {
  for (const auto& nf : catalog::homogeneous_catalog()) {
    CHECK(maximal_chain_rank(nf.frame) == nf.frame.rank());
  }
}

TEST_CASE("dual orbit factorization inverts the dual point map") {
  std::mt19937_64 rng(37);
  const Tolerance tol;
  for (const auto& nf : catalog::homogeneous_catalog()) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto s = catalog::random_triangular(nf.frame, rng);
      const Mat sm = s.matrix.to_mat();
      const SymMatrix y =
          frame::project_onto_V(nf.frame, SymMatrix::from_mat_symmetrized(sm * sm.transposed()))
              .matrix;
      const auto recovered = dual_orbit_factor(nf.frame, y, tol);
      // Uniqueness gives back exactly the generator.
      CHECK(dense::frobenius_norm(recovered.matrix.to_mat() - sm) <=
            1e-7 * (1.0 + dense::frobenius_norm(sm)));
    }
  }
}

TEST_CASE("dual orbit factorization rejects boundary and off-span input") {
  const IshiFrame f = catalog::star3();
  const Tolerance tol;
  SymMatrix y(3);
  y.set(0, 0, 1.0);
  y.set(1, 1, 1.0);  // block 3 has dual pivot zero
  CHECK_THROWS_AS(dual_orbit_factor(f, y, tol), NotInterior);
  SymMatrix off = SymMatrix::identity(3);
  off.set(0, 1, 0.25);
  CHECK_THROWS_AS(dual_orbit_factor(f, off, tol), NotInSpan);
}

TEST_CASE("group action requires strict positivity and validates spans") {
  const IshiFrame f = catalog::star3();
  const auto closure = make_triangular(f, tri_from_rows({{0, 0, 1}, {0, 0, 1}, {0, 0, 1}}));
  const frame::BlockElement x{f, SymMatrix::identity(3)};
  CHECK_THROWS_AS(group_act(closure, x, Side::primal), NotInGroup);
}
