#pragma once

// Cone membership, the triangular group and its primal/dual actions, orbit
// factorizations, minimal faces, extreme rays and the face-span machinery.

#include <vector>

#include "ishi/frame.hpp"

namespace ishi::geometry {

using frame::BlockElement;
using frame::IshiFrame;
using frame::Side;

enum class Membership { interior, boundary, outside, not_in_span };

// Block upper triangular matrix with scalar diagonal blocks and off-diagonal
// blocks in V_ij. strictly_positive marks membership in the group (all
// diagonal scalars > 0); otherwise the element lies in the closure of the
// group, where diagonal scalars may vanish with no constraint on the rest of
// their rows.
struct TriangularElement {
  IshiFrame frame;
  dense::UpperTriMatrix matrix;
  bool strictly_positive = false;

  // Scalar of diagonal block i (1-based).
  double diag_scalar(int i) const { return matrix(frame.blocks().offset(i), frame.blocks().offset(i)); }
};

// Validates membership blockwise and computes the positivity flag. Raises
// NotInGroup when a diagonal block is not scalar, an off-diagonal block
// leaves its subspace, or a diagonal scalar is negative.
TriangularElement make_triangular(const IshiFrame& f, const dense::UpperTriMatrix& t);

// a·b inside the group (closed when the axioms hold; certified).
TriangularElement group_mul(const TriangularElement& a, const TriangularElement& b);
// Inverse of an element of the group (requires strictly_positive).
TriangularElement group_inverse(const TriangularElement& t);

// Names the face F_{T,B} = 𝒯_T(𝕊ⁿ₊ ∩ 𝕍^B) (primal) or F*_{T,N} (dual).
// The face rank equals |indices|; indices is empty only for the zero face.
struct FaceDescriptor {
  IshiFrame frame;
  TriangularElement t;       // in the group
  std::vector<int> indices;  // B (primal) or N (dual), ascending
  Side side = Side::primal;

  int face_rank() const { return static_cast<int>(indices.size()); }
};

// interior iff X ∈ 𝕍 and positive definite; boundary iff PSD but singular;
// outside iff in 𝕍 but not PSD; not_in_span otherwise.
Membership in_cone(const IshiFrame& f, const dense::SymMatrix& x, const dense::Tolerance& tol);

// Primal: TᵀXT (stays in 𝕍 when the axioms hold; certified within tolerance).
// Dual: proj_𝕍(T X Tᵀ). Requires T strictly positive.
BlockElement group_act(const TriangularElement& t, const BlockElement& x, Side side);

enum class FactorMethod { block_cholesky, recursion };

// Factors an interior X as TᵀT with T in the group. block_cholesky runs the
// dense factorization and certifies the blocks; recursion runs the block
// elimination scheme (pivot block k clears its row, the positive-diagonal
// factor is assembled from the inverses). Both agree by uniqueness.
TriangularElement orbit_factor(const IshiFrame& f, const dense::SymMatrix& x,
                               const dense::Tolerance& tol,
                               FactorMethod method = FactorMethod::block_cholesky);

// Minimal face of a closure point: factor X = T̂ᵀT̂ with the zero-row rule,
// B = {i | diagonal scalar of block i > 0}, T = T̂ with zero diagonal blocks
// replaced by identities. X lies in the relative interior of F_{T,B}.
FaceDescriptor minimal_face(const IshiFrame& f, const dense::SymMatrix& x,
                            const dense::Tolerance& tol);

// Generator of the extreme ray F_{T,{i}} (primal: TᵀI^{i}T, matrix rank n_i)
// or F*_{T,{i}} (dual: proj_𝕍(T I^{i} Tᵀ)).
BlockElement extreme_ray(const IshiFrame& f, const TriangularElement& t, int i, Side side);

// I^B: the diagonal indicator proj_{𝕍^B} I_n.
dense::SymMatrix block_indicator(const IshiFrame& f, const std::vector<int>& b);

// Orthogonal projector onto 𝕍^B (blocks touching an index outside B vanish).
class SpanProjector {
 public:
  SpanProjector(IshiFrame f, std::vector<int> b);

  const std::vector<int>& indices() const { return b_; }
  dense::SymMatrix apply(const dense::SymMatrix& s) const;
  // dim 𝕍^B = |B| + Σ_{i<j ∈ B} dim V_ij.
  int dim() const;

 private:
  IshiFrame f_;
  std::vector<int> b_;
  std::vector<bool> mask_;
};

SpanProjector face_span_projector(const IshiFrame& f, const std::vector<int>& b);

// Length of the explicit maximal chain F_{I,{1..r}} ⊋ … ⊋ F_{I,{1}}; each
// inclusion is certified strict by a span-dimension drop. Returns r.
int maximal_chain_rank(const IshiFrame& f);

// Finds the unique T in the group with proj_𝕍(TTᵀ) = Y by the reverse block
// recursion (last block first). Success certifies that Y is interior to the
// dual cone; NotInterior is raised when a pivot is not strictly positive,
// NotInSpan when Y does not lie in 𝕍.
TriangularElement dual_orbit_factor(const IshiFrame& f, const dense::SymMatrix& y,
                                    const dense::Tolerance& tol);

}  // namespace ishi::geometry
