#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcalda/matrix.hpp"

namespace pcalda {

/// Mean image plus the leading eigenvectors of the unnormalized covariance
/// Ω = X̄·X̄ᵀ of the centered training images.
struct PcaModel {
  std::vector<double> mean;          // length N
  Matrix basis;                      // N×d, orthonormal columns
  std::vector<double> eigenvalues;   // d, non-increasing, ≥ 0

  std::size_t dim() const noexcept { return basis.cols(); }
  std::size_t input_dim() const noexcept { return mean.size(); }
};

/// Fit PCA to the N×p data matrix `x`, retaining `d` components
/// (1 ≤ d ≤ p − 1).
///
/// The N×N covariance is never formed. The p×p Gram matrix G = X̄ᵀ·X̄ shares
/// its nonzero spectrum with Ω, and each eigenvector u of G maps to the
/// covariance eigenvector X̄·u / ‖X̄·u‖. Gram eigenvalues at or below
/// 1e-12·trace(G) are treated as zero. Throws DegenerateData when the images
/// carry no variance (or fewer than d nonzero directions), InvalidArgument
/// for d out of range.
PcaModel fit_pca(const Matrix& x, std::size_t d);

/// basisᵀ·(y − mean).
std::vector<double> project(const PcaModel& model, std::span<const double> y);

/// project() applied to every column of x; result is d×x.cols().
Matrix project_matrix(const PcaModel& model, const Matrix& x);

/// Relative cutoff on Gram eigenvalues, as a fraction of trace(G).
inline constexpr double kGramCutoff = 1e-12;

/// Jacobi stopping tolerance for the Gram matrix.
inline constexpr double kGramEigenTolerance = 1e-15;

}  // namespace pcalda
