#include "pcalda/lda.hpp"

#include <fmt/format.h>

#include "pcalda/eigen.hpp"
#include "pcalda/error.hpp"
#include "pcalda/kernels.hpp"

namespace pcalda {

namespace {

void require_labels(const Matrix& z, std::span<const std::size_t> labels, std::size_t class_count) {
  if (labels.size() != z.cols())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{} labels for {} columns", labels.size(), z.cols()));
  if (class_count < 2)
    throw Error(ErrorCode::TooFewClasses,
                fmt::format("at least 2 classes required, found {}", class_count));
  std::vector<std::size_t> counts(class_count, 0);
  for (std::size_t label : labels) {
    if (label >= class_count)
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("label {} out of range for {} classes", label, class_count));
    ++counts[label];
  }
  for (std::size_t c = 0; c < class_count; ++c)
    if (counts[c] == 0)
      throw Error(ErrorCode::InvalidArgument, fmt::format("class {} has no samples", c));
}

void add_outer(Matrix& s, std::span<const double> v, double weight) {
  for (std::size_t b = 0; b < v.size(); ++b)
    for (std::size_t a = 0; a < v.size(); ++a) s(a, b) += weight * (v[a] * v[b]);
}

}  // namespace

Matrix class_means(const Matrix& z, std::span<const std::size_t> labels, std::size_t class_count) {
  require_labels(z, labels, class_count);
  Matrix means(z.rows(), class_count);
  std::vector<double> counts(class_count, 0.0);
  for (std::size_t i = 0; i < z.cols(); ++i) {
    auto dst = means.col(labels[i]);
    auto src = z.col(i);
    for (std::size_t r = 0; r < z.rows(); ++r) dst[r] += src[r];
    counts[labels[i]] += 1.0;
  }
  for (std::size_t c = 0; c < class_count; ++c)
    for (double& v : means.col(c)) v /= counts[c];
  return means;
}

Matrix within_class_scatter(const Matrix& z, std::span<const std::size_t> labels,
                            std::size_t class_count) {
  const Matrix means = class_means(z, labels, class_count);
  Matrix s(z.rows(), z.rows());
  std::vector<double> diff(z.rows());
  for (std::size_t i = 0; i < z.cols(); ++i) {
    auto x = z.col(i);
    auto m = means.col(labels[i]);
    for (std::size_t r = 0; r < diff.size(); ++r) diff[r] = x[r] - m[r];
    add_outer(s, diff, 1.0);
  }
  return s;
}

Matrix between_class_scatter(const Matrix& z, std::span<const std::size_t> labels,
                             std::size_t class_count) {
  const Matrix means = class_means(z, labels, class_count);
  const std::vector<double> total = kernels::column_mean(z);
  std::vector<double> counts(class_count, 0.0);
  for (std::size_t label : labels) counts[label] += 1.0;

  Matrix s(z.rows(), z.rows());
  std::vector<double> diff(z.rows());
  for (std::size_t c = 0; c < class_count; ++c) {
    auto m = means.col(c);
    for (std::size_t r = 0; r < diff.size(); ++r) diff[r] = m[r] - total[r];
    add_outer(s, diff, counts[c]);
  }
  return s;
}

FisherModel fit_lda(const Matrix& z, std::span<const std::size_t> labels,
                    const std::vector<std::string>& class_names, std::size_t f) {
  const std::size_t class_count = class_names.size();
  require_labels(z, labels, class_count);
  if (f < 1 || f > class_count - 1)
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("Fisher dimension {} out of range [1, {}] for {} classes", f,
                            class_count - 1, class_count));
  if (f > z.rows())
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("Fisher dimension {} exceeds the PCA dimension {}", f, z.rows()));

  const Matrix s_w = within_class_scatter(z, labels, class_count);
  const Matrix s_b = between_class_scatter(z, labels, class_count);
  EigenPairs pairs = generalized_symmetric_eigen(s_b, s_w);

  std::vector<double> eigenvalues(pairs.values.begin(), pairs.values.begin() + static_cast<std::ptrdiff_t>(f));
  for (double& v : eigenvalues)
    if (v < 0.0 && v >= -1e-9) v = 0.0;

  FisherModel model{pairs.vectors.leading_columns(f), std::move(eigenvalues), Matrix(f, class_count),
                    class_names};
  model.class_means = transpose_matmul(model.basis, class_means(z, labels, class_count));
  return model;
}

std::vector<double> project_fisher(const FisherModel& model, std::span<const double> z) {
  if (z.size() != model.input_dim())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("vector has {} values, Fisher model expects {}", z.size(), model.input_dim()));
  return transpose_matvec(model.basis, z);
}

Matrix project_fisher_matrix(const FisherModel& model, const Matrix& z) {
  if (z.rows() != model.input_dim())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("data has {} rows, Fisher model expects {}", z.rows(), model.input_dim()));
  return transpose_matmul(model.basis, z);
}

}  // namespace pcalda
