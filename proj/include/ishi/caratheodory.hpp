#pragma once

// Decompositions of cone points into extreme rays, the two dimension
// conditions that decide whether the minimum ray count can drop below the
// rank, the operator form of those conditions, single-step witness
// reductions, bound reporting, indecomposable components and selfduality.

#include <optional>
#include <vector>

#include "ishi/geometry.hpp"

namespace ishi::caratheodory {

using frame::BlockElement;
using frame::IshiFrame;
using frame::Side;
using geometry::TriangularElement;

// One failing triple a < b < c. Primal: V_ab nontrivial while
// dim V_ac ≠ dim V_bc; dual: V_bc nontrivial while dim V_ab ≠ dim V_ac.
// dim_first/dim_second follow that order.
struct ConditionViolation {
  int a = 0, b = 0, c = 0;
  int dim_first = 0, dim_second = 0;

  friend bool operator==(const ConditionViolation&, const ConditionViolation&) = default;
};

struct ConditionReport {
  Side side = Side::primal;
  bool holds = true;
  std::vector<ConditionViolation> violations;  // sorted by (a, b, c)
};

// For all i < j < k with dim V_ij > 0: dim V_ik == dim V_jk.
ConditionReport primal_condition(const IshiFrame& f);
// For all k < j < i with dim V_ji > 0: dim V_ki == dim V_kj.
ConditionReport dual_condition(const IshiFrame& f);
// The multiplication-operator form of the same conditions, evaluated on every
// basis element: the relevant composition with its adjoint must be the scaled
// identity on the target. Agrees with the dimension form on axiom-passing
// frames (the operator is always injective, so the verdicts coincide).
ConditionReport operator_condition(const IshiFrame& f, Side side, const dense::Tolerance& tol);

struct DecompositionTerm {
  double weight = 0.0;
  BlockElement generator;
};

// point == Σ weight·generator within tolerance; every generator spans an
// extreme ray of the stated side.
struct Decomposition {
  BlockElement point;
  std::vector<DecompositionTerm> terms;
  Side side = Side::primal;

  int term_count() const { return static_cast<int>(terms.size()); }
};

// Primal closure point → factor through its minimal face: X = Σ_{i∈B} TᵀI^iT
// with unit weights; term count equals the face rank.
Decomposition decompose(const IshiFrame& f, const dense::SymMatrix& x,
                        const dense::Tolerance& tol);

// Dual point given by its generator: point = proj_𝕍(TTᵀ), terms
// proj_𝕍(TI^iTᵀ) with unit weights over blocks whose column of T is nonzero.
// Accepts closure elements (vanished rows drop the corresponding terms).
Decomposition decompose_dual_orbit(const IshiFrame& f, const TriangularElement& t);

// Single-step reduction on the dual side for a triple k < j < i with
// A ∈ V_ji, B ∈ V_ki: when ‖A‖²‖B‖² > n_j·‖proj_{V_kj}(BAᵀ)‖² strictly, an
// interior dual point decomposes into r−1 dual rays (two tilted rays at
// block i plus the untouched diagonal rays). Raises WitnessConditionFails
// when the inequality is not strict.
Decomposition dual_witness(const IshiFrame& f, int k, int j, int i, const dense::Mat& a,
                           const dense::Mat& b);

// Mirror on the primal side for i < j < k with A ∈ V_ij, B ∈ V_ik and the
// inequality ‖A‖²‖B‖² > n_j·‖proj_{V_jk}(AᵀB)‖².
Decomposition primal_witness(const IshiFrame& f, int i, int j, int k, const dense::Mat& a,
                             const dense::Mat& b);

// Scans the dual-side violations and their basis pairs for a two-ray average
// whose point equals x, fitting scales from the diagonal blocks. Returns the
// resulting r−1 term decomposition, or nullopt when x does not have the
// required shape (identity outside the triple, scalar blocks inside).
std::optional<Decomposition> dual_witness_search(const IshiFrame& f, const dense::SymMatrix& x,
                                                 const dense::Tolerance& tol = {});

struct Bounds {
  int lower = 0;
  int upper = 0;
  bool witness_reduced = false;  // upper improved by a single-step reduction
};

// Certified bounds on the minimum number of extreme rays containing the
// point in their Minkowski sum. Primal: lower = ⌈matrix rank / max nᵢ⌉,
// upper = rank of the minimal face, improved to r−1 for interior points when
// a strict witness pair exists over the failing triples. Dual: requires an
// interior point (factored through the reverse recursion); lower is the
// trivial 1 — ray generators on this side can have full matrix rank, so no
// rank quotient applies — and upper mirrors the primal logic.
Bounds caratheodory_bounds(const IshiFrame& f, const dense::SymMatrix& x, Side side,
                           const dense::Tolerance& tol);

// Connected components of the graph on blocks with edges at nontrivial V_ij;
// ascending within and across components.
std::vector<std::vector<int>> indecomposable_components(const IshiFrame& f);

struct ComponentDetail {
  std::vector<int> indices;
  bool internally_nontrivial = false;  // every inner V_ij nontrivial
  bool equal_dimensions = false;       // all inner dims equal (vacuous for singletons)
  int common_dim = 0;                  // the shared dimension when equal, else 0
};

struct SelfdualReport {
  bool selfdual = false;
  ConditionReport primal;
  ConditionReport dual;
  std::vector<ComponentDetail> components;
  bool criteria_agree = false;  // condition pair vs per-component structure
};

// Selfdual iff both dimension conditions hold; cross-checked against the
// component criterion (every indecomposable component internally nontrivial
// with equal dimensions). The two must agree; disagreement raises
// CertificationError.
SelfdualReport is_selfdual(const IshiFrame& f);

}  // namespace ishi::caratheodory
