#pragma once

// Built-in example frames and deterministic random generators: the rank-3
// star pattern, full sparse frames, second-order-cone frames, a rank-3 frame
// with unequal subspace dimensions on both sides, direct sums, and random
// axiom-passing frames / group elements / interior points for property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ishi/geometry.hpp"
#include "ishi/graphs.hpp"

namespace ishi::catalog {

struct NamedFrame {
  std::string name;
  frame::IshiFrame frame;
};

// Rank 3, sizes (1,1,1): V_13 = V_23 = ℝ, V_12 trivial. Ambient dimension 5.
frame::IshiFrame star3();

// All block sizes 1 with every V_ij = ℝ: the frame of 𝕊ⁿ.
frame::IshiFrame full(int n);

// Sizes (m, 1) with V_12 = ℝ^{m×1}: a second-order-cone frame.
frame::IshiFrame lorentz(int m);

// Sizes (2,1,1) with dim V_12 = 1 (span of e₁), dim V_13 = 2, dim V_23 = 1.
// Axiom-passing; both dimension conditions fail and strict witness pairs
// exist on both sides.
frame::IshiFrame witness3();

// Direct sum: blocks of b appended after blocks of a, no cross subspaces.
frame::IshiFrame direct_sum(const frame::IshiFrame& a, const frame::IshiFrame& b);

// Axiom-passing example frames (includes the rank-4 classification frames).
std::vector<NamedFrame> homogeneous_catalog();
// homogeneous_catalog plus the two axiom-failing sparse patterns.
std::vector<NamedFrame> full_catalog();

// Group element with diagonal scalars exp(U(−0.7, 0.7)) and off-diagonal
// coordinates U(−1, 1) in each subspace basis.
geometry::TriangularElement random_triangular(const frame::IshiFrame& f, std::mt19937_64& rng);

// TᵀT for a random group element: an interior point of the cone.
dense::SymMatrix random_interior_point(const frame::IshiFrame& f, std::mt19937_64& rng);

// proj_𝕍(TTᵀ) for a random group element: an interior point of the dual cone.
dense::SymMatrix random_dual_interior_point(const frame::IshiFrame& f, std::mt19937_64& rng);

// Deterministic stream of axiom-passing frames: sparse frames of random
// forest-comparability patterns, inflated variants with block sizes up to
// max_block (a block may grow only when its vertex has no earlier-placed
// neighbor; all its edges then share one random column subspace), direct
// sums, full frames, and second-order-cone frames. Every returned frame is
// certified to pass the axioms.
std::vector<NamedFrame> random_frames(int count, std::uint64_t seed, int max_block = 3);

}  // namespace ishi::catalog
