#pragma once

// Exhaustive evaluation of the eight composition identities between left and
// right multiplication operators on an axiom-passing frame. Shared by the unit
// tests and the acceptance suite.

#include <cmath>
#include <vector>

#include "ishi/frame.hpp"

namespace ishi::testsupport {

struct IdentityResult {
  char tag;        // 'A'..'H'
  long count;      // evaluated instances
  double max_err;  // worst operator-matrix deviation
};

// Max-abs difference of two operator matrices (shapes always agree here).
inline double op_diff(const frame::BlockOperator& x, const frame::BlockOperator& y) {
  return dense::frobenius_norm(x.matrix - y.matrix);
}

inline std::vector<IdentityResult> operator_identity_suite(const frame::IshiFrame& f) {
  using frame::compose;
  using frame::left_mult;
  using frame::right_mult;
  const int r = f.rank();
  std::vector<IdentityResult> results;
  for (char tag = 'A'; tag <= 'H'; ++tag) results.push_back({tag, 0, 0.0});
  auto& res_a = results[0];
  auto& res_b = results[1];
  auto& res_c = results[2];
  auto& res_d = results[3];
  auto& res_e = results[4];
  auto& res_f = results[5];
  auto& res_g = results[6];
  auto& res_h = results[7];
  auto note = [](IdentityResult& rr, double err) {
    ++rr.count;
    if (err > rr.max_err) rr.max_err = err;
  };

  // [A] L_A L_B = L_{A·B}: A ∈ V_ij, B ∈ V_jk, on V_kl.
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      for (int k = j + 1; k <= r; ++k)
        for (const auto& a : f.subspace(i, j).basis())
          for (const auto& b : f.subspace(j, k).basis())
            for (int l = k; l <= r; ++l) {
              const auto lhs = compose(left_mult(f, i, j, a, l), left_mult(f, j, k, b, l));
              const auto rhs = left_mult(f, i, k, a * b, l);
              note(res_a, op_diff(lhs, rhs));
            }

  // [B] L_A R_C = R_C L_A: A ∈ V_ij, C ∈ V_lm, on V_jl (j ≤ l < m).
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      for (int l = j; l <= r; ++l)
        for (int m = l + 1; m <= r; ++m)
          for (const auto& a : f.subspace(i, j).basis())
            for (const auto& c : f.subspace(l, m).basis()) {
              const auto lhs = compose(right_mult(f, l, m, c, i), left_mult(f, i, j, a, l));
              const auto rhs = compose(left_mult(f, i, j, a, m), right_mult(f, l, m, c, j));
              note(res_b, op_diff(lhs, rhs));
            }

  // [C] R_C R_B = R_{B·C}: B ∈ V_jk, C ∈ V_kl, on V_xj (x ≤ j).
  for (int j = 1; j <= r; ++j)
    for (int k = j + 1; k <= r; ++k)
      for (int l = k + 1; l <= r; ++l)
        for (const auto& b : f.subspace(j, k).basis())
          for (const auto& c : f.subspace(k, l).basis())
            for (int x = 1; x <= j; ++x) {
              const auto lhs = compose(right_mult(f, k, l, c, x), right_mult(f, j, k, b, x));
              const auto rhs = right_mult(f, j, l, b * c, x);
              note(res_c, op_diff(lhs, rhs));
            }

  // [D] L*_A L_D = L_{L*_A D}: A ∈ V_ij, D ∈ V_ik (j < k), on V_kl.
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      for (int k = j + 1; k <= r; ++k)
        for (const auto& a : f.subspace(i, j).basis())
          for (const auto& d : f.subspace(i, k).basis()) {
            const auto e = frame::left_adjoint_apply(f, i, j, a, k, d);
            for (int l = k; l <= r; ++l) {
              const auto lhs =
                  compose(left_mult(f, i, j, a, l).adjoint(), left_mult(f, i, k, d, l));
              const auto rhs = left_mult(f, j, k, e, l);
              note(res_d, op_diff(lhs, rhs));
            }
          }

  // [E] L*_A R_C = R_C L*_A: A ∈ V_ij, C ∈ V_lm, on V_il (j ≤ l < m).
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      for (int l = j; l <= r; ++l)
        for (int m = l + 1; m <= r; ++m)
          for (const auto& a : f.subspace(i, j).basis())
            for (const auto& c : f.subspace(l, m).basis()) {
              const auto lhs =
                  compose(right_mult(f, l, m, c, j), left_mult(f, i, j, a, l).adjoint());
              const auto rhs =
                  compose(left_mult(f, i, j, a, m).adjoint(), right_mult(f, l, m, c, i));
              note(res_e, op_diff(lhs, rhs));
            }

  // [F] R*_B R_D = R_{R*_B D}: B ∈ V_jk, D ∈ V_ik (i < j), on V_xi (x ≤ i).
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      for (int k = j + 1; k <= r; ++k)
        for (const auto& b : f.subspace(j, k).basis())
          for (const auto& d : f.subspace(i, k).basis()) {
            const auto e = frame::right_adjoint_apply(f, j, k, b, i, d);
            for (int x = 1; x <= i; ++x) {
              const auto lhs =
                  compose(right_mult(f, j, k, b, x).adjoint(), right_mult(f, i, k, d, x));
              const auto rhs = right_mult(f, i, j, e, x);
              note(res_f, op_diff(lhs, rhs));
            }
          }

  // [G] L*_A L_A = (‖A‖²/n_j)·Identity on V_jl: A ∈ V_ij, j ≤ l.
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      for (const auto& a : f.subspace(i, j).basis()) {
        const double scale = dense::inner(a, a) / f.blocks().size(j);
        for (int l = j; l <= r; ++l) {
          const auto op = left_mult(f, i, j, a, l);
          const auto prod = compose(op.adjoint(), op);
          auto want = scale * dense::Mat::identity(prod.matrix.rows());
          note(res_g, dense::frobenius_norm(prod.matrix - want));
        }
      }

  // [H] R*_B R_B = (‖B‖²/n_j)·Identity on V_lj: B ∈ V_jk, l ≤ j.
  for (int j = 1; j <= r; ++j)
    for (int k = j + 1; k <= r; ++k)
      for (const auto& b : f.subspace(j, k).basis()) {
        const double scale = dense::inner(b, b) / f.blocks().size(j);
        for (int l = 1; l <= j; ++l) {
          const auto op = right_mult(f, j, k, b, l);
          const auto prod = compose(op.adjoint(), op);
          auto want = scale * dense::Mat::identity(prod.matrix.rows());
          note(res_h, dense::frobenius_norm(prod.matrix - want));
        }
      }

  return results;
}

}  // namespace ishi::testsupport
