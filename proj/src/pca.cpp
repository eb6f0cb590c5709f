#include "pcalda/pca.hpp"

#include <cmath>

#include <fmt/format.h>

#include "pcalda/eigen.hpp"
#include "pcalda/error.hpp"
#include "pcalda/kernels.hpp"

namespace pcalda {

PcaModel fit_pca(const Matrix& x, std::size_t d) {
  const std::size_t p = x.cols();
  if (p < 2)
    throw Error(ErrorCode::InvalidArgument, fmt::format("PCA needs at least 2 images, got {}", p));
  if (d < 1 || d > p - 1)
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("PCA dimension {} out of range [1, {}] for {} images", d, p - 1, p));

  std::vector<double> mean = kernels::column_mean(x);
  const Matrix centered = kernels::center_columns(x, mean);

  // Snapshot route: p×p Gram matrix instead of the N×N covariance.
  const Matrix gram = transpose_matmul(centered, centered);
  const double trace = gram.trace();
  if (!(trace > 0.0))
    throw Error(ErrorCode::DegenerateData, "all training images are identical; no variance to model");

  const EigenPairs pairs = symmetric_eigen(gram, kGramEigenTolerance);
  const double cutoff = kGramCutoff * trace;
  std::size_t usable = 0;
  while (usable < pairs.values.size() && pairs.values[usable] > cutoff) ++usable;
  if (usable < d)
    throw Error(ErrorCode::DegenerateData,
                fmt::format("training images span only {} independent direction(s); "
                            "cannot retain {} components",
                            usable, d));

  Matrix basis = matmul(centered, pairs.vectors.leading_columns(d));
  std::vector<double> eigenvalues(pairs.values.begin(), pairs.values.begin() + static_cast<std::ptrdiff_t>(d));
  for (std::size_t j = 0; j < d; ++j) {
    auto col = basis.col(j);
    const double len = norm2(col);
    for (double& v : col) v /= len;
  }
  apply_sign_convention(basis);

  return {std::move(mean), std::move(basis), std::move(eigenvalues)};
}

std::vector<double> project(const PcaModel& model, std::span<const double> y) {
  if (y.size() != model.input_dim())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("probe has {} values, PCA model expects {}", y.size(), model.input_dim()));
  std::vector<double> centered(y.begin(), y.end());
  for (std::size_t i = 0; i < centered.size(); ++i) centered[i] -= model.mean[i];
  return transpose_matvec(model.basis, centered);
}

Matrix project_matrix(const PcaModel& model, const Matrix& x) {
  if (x.rows() != model.input_dim())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("data has {} rows, PCA model expects {}", x.rows(), model.input_dim()));
  return transpose_matmul(model.basis, kernels::center_columns(x, model.mean));
}

}  // namespace pcalda
