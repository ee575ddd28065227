#include "ishi/caratheodory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ishi::caratheodory {

using dense::Mat;
using dense::SymMatrix;
using dense::Tolerance;
using dense::UpperTriMatrix;

namespace {

void require_axioms(const IshiFrame& f, const char* what) {
  if (!f.axioms_pass()) throw AxiomNotVerified(std::string(what) + " needs a verified frame");
}

}  // namespace

ConditionReport primal_condition(const IshiFrame& f) {
  require_axioms(f, "the primal condition");
  ConditionReport rep{Side::primal, true, {}};
  const int r = f.rank();
  for (int i = 1; i <= r; ++i) {
    for (int j = i + 1; j <= r; ++j) {
      if (f.dim(i, j) == 0) continue;
      for (int k = j + 1; k <= r; ++k) {
        if (f.dim(i, k) != f.dim(j, k)) {
          rep.violations.push_back({i, j, k, f.dim(i, k), f.dim(j, k)});
        }
      }
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

ConditionReport dual_condition(const IshiFrame& f) {
  require_axioms(f, "the dual condition");
  ConditionReport rep{Side::dual, true, {}};
  const int r = f.rank();
  for (int k = 1; k <= r; ++k) {
    for (int j = k + 1; j <= r; ++j) {
      for (int i = j + 1; i <= r; ++i) {
        if (f.dim(j, i) == 0) continue;
        if (f.dim(k, j) != f.dim(k, i)) {
          rep.violations.push_back({k, j, i, f.dim(k, j), f.dim(k, i)});
        }
      }
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

ConditionReport operator_condition(const IshiFrame& f, Side side, const Tolerance& tol) {
  require_axioms(f, "the operator condition");
  ConditionReport rep{side, true, {}};
  const int r = f.rank();
  const double thr = tol.threshold(1.0);
  auto identity_defect = [](const Mat& m, double scale) {
    // max entry of m·mᵀ − scale·I
    const Mat g = m * m.transposed();
    double worst = 0.0;
    for (int a = 0; a < g.rows(); ++a)
      for (int b = 0; b < g.cols(); ++b)
        worst = std::max(worst, std::abs(g(a, b) - (a == b ? scale : 0.0)));
    return worst;
  };
  if (side == Side::primal) {
    for (int i = 1; i <= r; ++i) {
      for (int j = i + 1; j <= r; ++j) {
        if (f.dim(i, j) == 0) continue;
        const double scale = 1.0 / f.blocks().size(j);
        for (int k = j + 1; k <= r; ++k) {
          double worst = 0.0;
          for (const Mat& a : f.subspace(i, j).basis()) {
            worst = std::max(worst, identity_defect(frame::left_mult(f, i, j, a, k).matrix, scale));
          }
          if (worst > thr) rep.violations.push_back({i, j, k, f.dim(i, k), f.dim(j, k)});
        }
      }
    }
  } else {
    for (int k = 1; k <= r; ++k) {
      for (int j = k + 1; j <= r; ++j) {
        for (int i = j + 1; i <= r; ++i) {
          if (f.dim(j, i) == 0) continue;
          const double scale = 1.0 / f.blocks().size(j);
          double worst = 0.0;
          for (const Mat& a : f.subspace(j, i).basis()) {
            worst = std::max(worst, identity_defect(frame::right_mult(f, j, i, a, k).matrix, scale));
          }
          if (worst > thr) rep.violations.push_back({k, j, i, f.dim(k, j), f.dim(k, i)});
        }
      }
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

Decomposition decompose(const IshiFrame& f, const SymMatrix& x, const Tolerance& tol) {
  const geometry::FaceDescriptor face = geometry::minimal_face(f, x, tol);
  Decomposition dec{BlockElement{f, x}, {}, Side::primal};
  SymMatrix sum(f.order());
  for (int i : face.indices) {
    BlockElement g = geometry::extreme_ray(f, face.t, i, Side::primal);
    sum += g.matrix;
    dec.terms.push_back({1.0, std::move(g)});
  }
  const double res = dense::frobenius_norm(sum - x);
  if (res > 10.0 * tol.threshold(1.0 + dense::frobenius_norm(x))) {
    throw CertificationError("ray sum failed to reconstruct the point (residual " +
                             std::to_string(res) + ")");
  }
  return dec;
}

Decomposition decompose_dual_orbit(const IshiFrame& f, const TriangularElement& t) {
  if (t.matrix.order() != f.order()) {
    throw DimensionMismatch("element order does not match frame order");
  }
  const auto& blocks = f.blocks();
  const Mat tm = t.matrix.to_mat();
  const double scale = dense::frobenius_norm(tm);
  const double thr = f.tolerance().threshold(scale);
  Decomposition dec{
      frame::project_onto_V(f, SymMatrix::from_mat_symmetrized(tm * tm.transposed())), {},
      Side::dual};
  SymMatrix sum(blocks.n);
  for (int i = 1; i <= blocks.r; ++i) {
    const Mat col = tm.block(0, blocks.offset(i), blocks.n, blocks.size(i));
    if (dense::frobenius_norm(col) <= thr) continue;  // vanished block contributes nothing
    BlockElement g =
        frame::project_onto_V(f, SymMatrix::from_mat_symmetrized(col * col.transposed()));
    sum += g.matrix;
    dec.terms.push_back({1.0, std::move(g)});
  }
  const double res = dense::frobenius_norm(sum - dec.point.matrix);
  if (res > 10.0 * f.tolerance().threshold(1.0 + dense::frobenius_norm(dec.point.matrix))) {
    throw CertificationError("dual ray sum failed to reconstruct the point");
  }
  return dec;
}

namespace {

struct WitnessData {
  double lhs = 0.0;  // ‖A‖²‖B‖²
  double rhs = 0.0;  // n_j·‖adjoint product‖²
};

void check_member(const IshiFrame& f, int i, int j, const Mat& m, const char* label) {
  const auto& sub = f.subspace(i, j);
  if (m.rows() != sub.rows() || m.cols() != sub.cols()) {
    throw ShapeMismatch(std::string(label) + " has the wrong shape for V(" + std::to_string(i) +
                        "," + std::to_string(j) + ")");
  }
  if (sub.residual(m) > f.tolerance().threshold(dense::frobenius_norm(m))) {
    throw NotInSpan(std::string(label) + " is not in V(" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
  }
}

void require_strict(const WitnessData& w, const Tolerance& tol) {
  const double thr = tol.threshold(std::max(w.lhs, w.rhs));
  if (w.lhs <= w.rhs + thr) {
    throw WitnessConditionFails("the strict product inequality does not hold (lhs " +
                                std::to_string(w.lhs) + ", rhs " + std::to_string(w.rhs) + ")");
  }
}

}  // namespace

Decomposition dual_witness(const IshiFrame& f, int k, int j, int i, const Mat& a, const Mat& b) {
  require_axioms(f, "the dual witness");
  if (!(1 <= k && k < j && j < i && i <= f.rank())) {
    throw ShapeMismatch("dual witness indices must satisfy 1 ≤ k < j < i ≤ r");
  }
  check_member(f, j, i, a, "A");
  check_member(f, k, i, b, "B");
  const auto& blocks = f.blocks();
  const double nj = blocks.size(j);
  const Mat rstar = f.subspace(k, j).project(b * a.transposed());
  WitnessData w{dense::inner(a, a) * dense::inner(b, b), nj * dense::inner(rstar, rstar)};
  require_strict(w, f.tolerance());

  UpperTriMatrix tmat = UpperTriMatrix::identity(blocks.n);
  tmat.set_block(blocks.offset(j), blocks.offset(i), a);
  tmat.set_block(blocks.offset(k), blocks.offset(i), b);
  UpperTriMatrix umat = UpperTriMatrix::identity(blocks.n);
  umat.set_block(blocks.offset(j), blocks.offset(i), -1.0 * a);
  umat.set_block(blocks.offset(k), blocks.offset(i), -1.0 * b);
  const TriangularElement tt = geometry::make_triangular(f, tmat);
  const TriangularElement tu = geometry::make_triangular(f, umat);

  Decomposition dec{BlockElement{f, SymMatrix(blocks.n)}, {}, Side::dual};
  dec.terms.push_back({0.5, geometry::extreme_ray(f, tt, i, Side::dual)});
  dec.terms.push_back({0.5, geometry::extreme_ray(f, tu, i, Side::dual)});
  for (int l = 1; l <= blocks.r; ++l) {
    if (l == i || l == j || l == k) continue;
    dec.terms.push_back({1.0, BlockElement{f, geometry::block_indicator(f, {l})}});
  }
  SymMatrix point(blocks.n);
  for (const auto& term : dec.terms) {
    SymMatrix scaled = term.generator.matrix;
    scaled *= term.weight;
    point += scaled;
  }
  dec.point = BlockElement{f, point};
  try {
    geometry::dual_orbit_factor(f, point, f.tolerance());
  } catch (const Error& e) {
    throw CertificationError(std::string("witness point failed the interior certificate: ") +
                             e.what());
  }
  return dec;
}

Decomposition primal_witness(const IshiFrame& f, int i, int j, int k, const Mat& a, const Mat& b) {
  require_axioms(f, "the primal witness");
  if (!(1 <= i && i < j && j < k && k <= f.rank())) {
    throw ShapeMismatch("primal witness indices must satisfy 1 ≤ i < j < k ≤ r");
  }
  check_member(f, i, j, a, "A");
  check_member(f, i, k, b, "B");
  const auto& blocks = f.blocks();
  const double nj = blocks.size(j);
  const Mat lstar = f.subspace(j, k).project(a.transposed() * b);
  WitnessData w{dense::inner(a, a) * dense::inner(b, b), nj * dense::inner(lstar, lstar)};
  require_strict(w, f.tolerance());

  UpperTriMatrix tmat = UpperTriMatrix::identity(blocks.n);
  tmat.set_block(blocks.offset(i), blocks.offset(j), a);
  tmat.set_block(blocks.offset(i), blocks.offset(k), b);
  UpperTriMatrix umat = UpperTriMatrix::identity(blocks.n);
  umat.set_block(blocks.offset(i), blocks.offset(j), -1.0 * a);
  umat.set_block(blocks.offset(i), blocks.offset(k), -1.0 * b);
  const TriangularElement tt = geometry::make_triangular(f, tmat);
  const TriangularElement tu = geometry::make_triangular(f, umat);

  Decomposition dec{BlockElement{f, SymMatrix(blocks.n)}, {}, Side::primal};
  dec.terms.push_back({0.5, geometry::extreme_ray(f, tt, i, Side::primal)});
  dec.terms.push_back({0.5, geometry::extreme_ray(f, tu, i, Side::primal)});
  for (int l = 1; l <= blocks.r; ++l) {
    if (l == i || l == j || l == k) continue;
    dec.terms.push_back({1.0, BlockElement{f, geometry::block_indicator(f, {l})}});
  }
  SymMatrix point(blocks.n);
  for (const auto& term : dec.terms) {
    SymMatrix scaled = term.generator.matrix;
    scaled *= term.weight;
    point += scaled;
  }
  dec.point = BlockElement{f, point};
  if (geometry::in_cone(f, point, f.tolerance()) != geometry::Membership::interior) {
    throw CertificationError("witness point failed the interior certificate");
  }
  return dec;
}

std::optional<Decomposition> dual_witness_search(const IshiFrame& f, const SymMatrix& x,
                                                 const Tolerance& tol) {
  require_axioms(f, "the dual witness search");
  const auto& blocks = f.blocks();
  if (x.order() != blocks.n) throw ShapeMismatch("point order does not match the frame");
  const double thr = tol.threshold(1.0 + dense::frobenius_norm(x));

  // Shape precheck helpers: scalar diagonal block and vanishing block.
  const auto scalar_at = [&](int p, double& value) {
    const Mat blk = x.block(blocks.offset(p), blocks.offset(p), blocks.size(p), blocks.size(p));
    value = 0.0;
    for (int d = 0; d < blocks.size(p); ++d) value += blk(d, d);
    value /= blocks.size(p);
    Mat residual = blk;
    for (int d = 0; d < blocks.size(p); ++d) residual(d, d) -= value;
    return dense::frobenius_norm(residual) <= thr;
  };
  const auto vanishes_at = [&](int p, int q) {
    const Mat blk = x.block(blocks.offset(p), blocks.offset(q), blocks.size(p), blocks.size(q));
    return dense::frobenius_norm(blk) <= thr;
  };

  for (const auto& viol : dual_condition(f).violations) {
    const int k = viol.a;
    const int j = viol.b;
    const int i = viol.c;
    bool shaped = true;
    double alpha = 0.0;  // scalar at block j
    double beta = 0.0;   // scalar at block k
    for (int p = 1; p <= blocks.r && shaped; ++p) {
      double value = 0.0;
      if (!scalar_at(p, value)) {
        shaped = false;
        break;
      }
      if (p == j) {
        alpha = value;
      } else if (p == k) {
        beta = value;
      } else if (std::abs(value - 1.0) > thr) {
        shaped = false;
      }
      for (int q = p + 1; q <= blocks.r && shaped; ++q) {
        if (p == k && q == j) continue;  // the one block the witness may fill
        if (!vanishes_at(p, q)) shaped = false;
      }
    }
    if (!shaped || alpha <= thr || beta <= thr) continue;

    const double s = std::sqrt(alpha * blocks.size(j));
    const double t = std::sqrt(beta * blocks.size(k));
    const Mat xkj = x.block(blocks.offset(k), blocks.offset(j), blocks.size(k), blocks.size(j));
    for (const Mat& a0 : f.subspace(j, i).basis()) {
      for (const Mat& b0 : f.subspace(k, i).basis()) {
        const Mat cross = f.subspace(k, j).project(b0 * a0.transposed());
        for (const double sign : {1.0, -1.0}) {
          if (dense::frobenius_norm((sign * s * t) * cross - xkj) > thr) continue;
          try {
            Decomposition dec = dual_witness(f, k, j, i, (sign * s) * a0, t * b0);
            if (dense::frobenius_norm(dec.point.matrix - x) <= 10.0 * thr) return dec;
          } catch (const WitnessConditionFails&) {
            // Not strict for this pair; keep scanning.
          }
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

// Best strict margin 1 − n_j·‖adjoint product‖² over basis pairs of the
// failing triples; > 0 means a single-step reduction applies.
double best_witness_margin(const IshiFrame& f, const ConditionReport& cond) {
  double best = -1.0;
  for (const auto& v : cond.violations) {
    if (cond.side == Side::primal) {
      const int i = v.a, j = v.b, k = v.c;
      const double nj = f.blocks().size(j);
      for (const Mat& a : f.subspace(i, j).basis()) {
        for (const Mat& b : f.subspace(i, k).basis()) {
          const Mat lstar = f.subspace(j, k).project(a.transposed() * b);
          best = std::max(best, 1.0 - nj * dense::inner(lstar, lstar));
        }
      }
    } else {
      const int k = v.a, j = v.b, i = v.c;
      const double nj = f.blocks().size(j);
      for (const Mat& a : f.subspace(j, i).basis()) {
        for (const Mat& b : f.subspace(k, i).basis()) {
          const Mat rstar = f.subspace(k, j).project(b * a.transposed());
          best = std::max(best, 1.0 - nj * dense::inner(rstar, rstar));
        }
      }
    }
  }
  return best;
}

}  // namespace

Bounds caratheodory_bounds(const IshiFrame& f, const SymMatrix& x, Side side,
                           const Tolerance& tol) {
  require_axioms(f, "bound reporting");
  int max_block = 0;
  for (int i = 1; i <= f.rank(); ++i) max_block = std::max(max_block, f.blocks().size(i));
  Bounds bounds;
  if (side == Side::primal) {
    const Decomposition dec = decompose(f, x, tol);
    bounds.upper = dec.term_count();
    const int rank = dense::matrix_rank(x, tol);
    bounds.lower = std::max((rank + max_block - 1) / max_block, rank > 0 ? 1 : 0);
    if (bounds.upper == f.rank() &&
        geometry::in_cone(f, x, tol) == geometry::Membership::interior) {
      const ConditionReport cond = primal_condition(f);
      if (!cond.holds && best_witness_margin(f, cond) > tol.threshold(1.0)) {
        bounds.upper = f.rank() - 1;
        bounds.witness_reduced = true;
      }
    }
  } else {
    const TriangularElement t = geometry::dual_orbit_factor(f, x, tol);
    bounds.upper = decompose_dual_orbit(f, t).term_count();
    bounds.lower = 1;
    if (bounds.upper == f.rank()) {
      const ConditionReport cond = dual_condition(f);
      if (!cond.holds && best_witness_margin(f, cond) > tol.threshold(1.0)) {
        bounds.upper = f.rank() - 1;
        bounds.witness_reduced = true;
      }
    }
  }
  if (bounds.lower > bounds.upper) {
    throw CertificationError("bound coherence failed: lower " + std::to_string(bounds.lower) +
                             " exceeds upper " + std::to_string(bounds.upper));
  }
  return bounds;
}

std::vector<std::vector<int>> indecomposable_components(const IshiFrame& f) {
  const int r = f.rank();
  std::vector<int> comp(static_cast<std::size_t>(r) + 1, 0);
  int label = 0;
  for (int s = 1; s <= r; ++s) {
    if (comp[static_cast<std::size_t>(s)] != 0) continue;
    ++label;
    std::vector<int> queue{s};
    comp[static_cast<std::size_t>(s)] = label;
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      for (int u = 1; u <= r; ++u) {
        if (u == v || comp[static_cast<std::size_t>(u)] != 0) continue;
        if (f.dim(std::min(u, v), std::max(u, v)) > 0) {
          comp[static_cast<std::size_t>(u)] = label;
          queue.push_back(u);
        }
      }
    }
  }
  std::vector<std::vector<int>> out(static_cast<std::size_t>(label));
  for (int v = 1; v <= r; ++v) out[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)]) - 1].push_back(v);
  return out;
}

SelfdualReport is_selfdual(const IshiFrame& f) {
  require_axioms(f, "the selfduality test");
  SelfdualReport rep;
  rep.primal = primal_condition(f);
  rep.dual = dual_condition(f);
  rep.selfdual = rep.primal.holds && rep.dual.holds;
  bool structure = true;
  for (const auto& comp : indecomposable_components(f)) {
    ComponentDetail detail;
    detail.indices = comp;
    detail.internally_nontrivial = true;
    detail.equal_dimensions = true;
    int common = -1;
    for (std::size_t a = 0; a < comp.size(); ++a) {
      for (std::size_t b = a + 1; b < comp.size(); ++b) {
        const int d = f.dim(comp[a], comp[b]);
        if (d == 0) detail.internally_nontrivial = false;
        if (common < 0) common = d;
        if (d != common) detail.equal_dimensions = false;
      }
    }
    detail.common_dim = (detail.equal_dimensions && common > 0) ? common : 0;
    structure = structure && detail.internally_nontrivial && detail.equal_dimensions;
    rep.components.push_back(std::move(detail));
  }
  rep.criteria_agree = (rep.selfdual == structure);
  if (!rep.criteria_agree) {
    throw CertificationError("condition pair and component structure disagree on selfduality");
  }
  return rep;
}

}  // namespace ishi::caratheodory
