#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pcalda/matrix.hpp"

namespace pcalda {

/// Fisher discriminant basis fitted in PCA space.
struct FisherModel {
  Matrix basis;                          // d×f, unit-length columns
  std::vector<double> eigenvalues;       // f generalized eigenvalues, non-increasing
  Matrix class_means;                    // f×C, column c = mean of class c in Fisher space
  std::vector<std::string> class_names;  // C

  std::size_t dim() const noexcept { return basis.cols(); }
  std::size_t input_dim() const noexcept { return basis.rows(); }
};

/// S_W = Σ_c Σ_{x ∈ class c} (x − m_c)(x − m_c)ᵀ over the columns of z.
/// labels[i] ∈ [0, class_count) names the class of column i; every class
/// must own at least one column.
Matrix within_class_scatter(const Matrix& z, std::span<const std::size_t> labels,
                            std::size_t class_count);

/// S_B = Σ_c n_c (m_c − m)(m_c − m)ᵀ with m the mean of all columns.
Matrix between_class_scatter(const Matrix& z, std::span<const std::size_t> labels,
                             std::size_t class_count);

/// Per-class means of the columns of z, as a rows×C matrix.
Matrix class_means(const Matrix& z, std::span<const std::size_t> labels, std::size_t class_count);

/// Top-f solutions of S_B·w = λ·S_W·w (1 ≤ f ≤ C − 1). A singular S_W
/// surfaces as NotPositiveDefinite with advice to lower the PCA dimension.
FisherModel fit_lda(const Matrix& z, std::span<const std::size_t> labels,
                    const std::vector<std::string>& class_names, std::size_t f);

/// basisᵀ·z.
std::vector<double> project_fisher(const FisherModel& model, std::span<const double> z);
Matrix project_fisher_matrix(const FisherModel& model, const Matrix& z);

}  // namespace pcalda
