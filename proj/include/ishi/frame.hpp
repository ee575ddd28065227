#pragma once

// Block structure and subspaces V_ij of a block matrix spectrahedral cone,
// axiom verification, projection onto the ambient block subspace, and the
// left/right multiplication operators between subspaces.
//
// Conventions: block indices are 1-based (i, j, k in 1..r, pairs always i < j);
// matrix entry indices are 0-based. Diagonal subspaces V_ii = ℝ·I_{n_i} are
// implicit and never stored.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ishi/dense.hpp"
#include "ishi/errors.hpp"

namespace ishi::frame {

enum class Side { primal, dual };

struct BlockStructure {
  int r = 0;                 // number of diagonal blocks
  std::vector<int> sizes;    // sizes[i-1] = n_i
  std::vector<int> offsets;  // offsets[i-1] = first row/column of block i
  int n = 0;                 // total order Σ n_i

  static BlockStructure from_sizes(const std::vector<int>& sizes);

  int size(int i) const { return sizes[static_cast<std::size_t>(i) - 1]; }
  int offset(int i) const { return offsets[static_cast<std::size_t>(i) - 1]; }

  friend bool operator==(const BlockStructure&, const BlockStructure&) = default;
};

// A linear subspace of ℝ^{rows×cols} held as an orthonormal basis under the
// trace inner product. May be trivial (empty basis).
class Subspace {
 public:
  Subspace() = default;
  Subspace(int rows, int cols) : rows_(rows), cols_(cols) {}
  // The caller promises orthonormality; make_frame is the canonical producer.
  Subspace(int rows, int cols, std::vector<dense::Mat> orthonormal_basis);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<dense::Mat>& basis() const { return basis_; }

  dense::Mat project(const dense::Mat& m) const;
  std::vector<double> coords(const dense::Mat& m) const;
  // Frobenius distance from m to the subspace.
  double residual(const dense::Mat& m) const;

  // The implicit diagonal subspace ℝ·I_n with basis {I_n/√n}.
  static Subspace diagonal(int n);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<dense::Mat> basis_;
};

enum class Axiom { V1, V2, V3 };

struct AxiomViolation {
  Axiom axiom;
  int i, j, k;  // [V3] instances carry k == j
  int p, q;     // offending basis pair (indices into the respective bases)
  double residual;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  std::vector<std::string> warnings;  // e.g. dropped dependent generators

  bool passed() const { return violations.empty(); }
};

// Immutable frame: block structure plus the off-diagonal subspaces. Value
// type with shared storage; copies are O(1) and thread-safe.
class IshiFrame {
 public:
  IshiFrame() = default;

  const BlockStructure& blocks() const;
  int rank() const { return blocks().r; }
  int order() const { return blocks().n; }

  // Stored off-diagonal subspace, 1 ≤ i < j ≤ r.
  const Subspace& subspace(int i, int j) const;
  // Subspace for any 1 ≤ i ≤ j ≤ r; i == j yields the implicit ℝ·I_{n_i}.
  Subspace subspace_any(int i, int j) const;
  int dim(int i, int j) const { return subspace(i, j).dim(); }
  // dim 𝕍 = r + Σ_{i<j} dim V_ij.
  int ambient_dim() const;

  bool axioms_pass() const;
  // Axiom report computed at construction with the construction tolerance.
  const AxiomReport& construction_report() const;
  const dense::Tolerance& tolerance() const;

  friend IshiFrame make_frame(const std::vector<int>&,
                              const std::map<std::pair<int, int>, std::vector<dense::Mat>>&,
                              const dense::Tolerance&);

  struct Data;  // internal shared storage, defined in frame.cpp

 private:
  std::shared_ptr<const Data> d_;
};

// Builds a frame from block sizes and generator lists per (i,j) pair.
// Generators are orthonormalized (Gram–Schmidt); linearly dependent ones are
// dropped with a warning in the report. A generator list whose Gram matrix is
// already the identity to high precision is adopted bit-for-bit, so exported
// frames re-enter unchanged. Raises ShapeMismatch for bad sizes or shapes.
IshiFrame make_frame(const std::vector<int>& sizes,
                     const std::map<std::pair<int, int>, std::vector<dense::Mat>>& generators,
                     const dense::Tolerance& tol = {});

// Checks [V1] A·B ∈ V_ik, [V2] Aᵀ·B ∈ V_jk and the polarized [V3]
// AᵀB + BᵀA ∈ ℝ·I over all basis pairs. Violations are data, not errors.
AxiomReport verify_axioms(const IshiFrame& f, const dense::Tolerance& tol);

// An element of 𝕍 tied to its frame.
struct BlockElement {
  IshiFrame frame;
  dense::SymMatrix matrix;
};

// Frobenius distance from S to 𝕍.
double span_residual(const IshiFrame& f, const dense::SymMatrix& s);

// Orthogonal projection onto 𝕍: diagonal block i becomes (tr/n_i)·I_{n_i},
// block (i,j) is projected onto V_ij. Idempotent and self-adjoint.
BlockElement project_onto_V(const IshiFrame& f, const dense::SymMatrix& s);

// Matrix of a linear map between subspaces, relative to their orthonormal
// bases. Subspace ids are normalized pairs (a, b) with a ≤ b; (a, a) denotes
// the implicit diagonal subspace.
struct BlockOperator {
  std::pair<int, int> source;
  std::pair<int, int> target;
  dense::Mat matrix;  // dim(target) × dim(source)

  BlockOperator adjoint() const { return {target, source, matrix.transposed()}; }
};

// a ∘ b; requires b.target == a.source.
BlockOperator compose(const BlockOperator& a, const BlockOperator& b);

// L_A for A ∈ V_ij: maps V_jl → V_il by B ↦ A·B, for j ≤ l ≤ r.
// Raises AxiomNotVerified unless the frame passes its axiom check.
BlockOperator left_mult(const IshiFrame& f, int i, int j, const dense::Mat& a, int l);

// R_A for A ∈ V_ij: maps V_li → V_lj by B ↦ B·A, for 1 ≤ l ≤ i.
BlockOperator right_mult(const IshiFrame& f, int i, int j, const dense::Mat& a, int l);

// Adjoint actions on concrete matrices (orthonormal bases make these exact):
// L*_A : V_il → V_jl, Y ↦ proj_{V_jl}(Aᵀ·Y), for A ∈ V_ij, j ≤ l.
dense::Mat left_adjoint_apply(const IshiFrame& f, int i, int j, const dense::Mat& a, int l,
                              const dense::Mat& y);
// R*_A : V_lj → V_li, Y ↦ proj_{V_li}(Y·Aᵀ), for A ∈ V_ij, l ≤ i.
dense::Mat right_adjoint_apply(const IshiFrame& f, int i, int j, const dense::Mat& a, int l,
                               const dense::Mat& y);

}  // namespace ishi::frame
