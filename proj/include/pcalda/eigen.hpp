#pragma once

#include <vector>

#include "pcalda/matrix.hpp"

namespace pcalda {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr int kJacobiSweepCap = 100;

/// Eigenvalues in non-increasing order; column j of `vectors` pairs with
/// values[j]. In every column the entry of largest magnitude is
/// non-negative (lowest index wins a magnitude tie).
struct EigenPairs {
  std::vector<double> values;
  Matrix vectors;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Sweeps until the off-diagonal Frobenius norm is at most tol·‖A‖_F, which
/// bounds every residual ‖A·v − λ·v‖₂ by the same quantity. Throws
/// NotSymmetric / DimensionMismatch on bad input and NoConvergence (with the
/// final off-diagonal norm) after kJacobiSweepCap sweeps.
EigenPairs symmetric_eigen(const Matrix& a, double tol = kDefaultTolerance);

/// Solves s_b·w = λ·s_w·w by whitening s_w.
///
/// s_w = U·D·Uᵀ is factored, W = U·D^(-1/2) maps the problem to the ordinary
/// symmetric one on Wᵀ·s_b·W, and eigenvectors come back through W before
/// being scaled to unit Euclidean length. A non-positive-definite s_w (smallest
/// eigenvalue ≤ tol·‖s_w‖_F) raises NotPositiveDefinite.
EigenPairs generalized_symmetric_eigen(const Matrix& s_b, const Matrix& s_w,
                                       double tol = kDefaultTolerance);

/// Flip each column so its largest-magnitude entry is non-negative.
void apply_sign_convention(Matrix& vectors);

}  // namespace pcalda
