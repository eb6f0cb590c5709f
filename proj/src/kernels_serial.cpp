// Reference loop-nests. Written index-first, the way the formulas read;
// summation order matches the parallel kernels.

#include <cmath>

#include "pcalda/kernels.hpp"

namespace pcalda::kernels::serial {

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

Matrix transpose_matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) s += a(k, i) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

std::vector<double> column_mean(const Matrix& x) {
  std::vector<double> mean(x.rows(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.cols(); ++j) s += x(i, j);
    mean[i] = s / static_cast<double>(x.cols());
  }
  return mean;
}

Matrix center_columns(const Matrix& x, std::span<const double> mean) {
  Matrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) - mean[i];
  return out;
}

std::vector<double> column_distances(std::span<const double> probe, const Matrix& exemplars) {
  std::vector<double> dist;
  dist.reserve(exemplars.cols());
  for (std::size_t j = 0; j < exemplars.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < exemplars.rows(); ++i)
      s += (probe[i] - exemplars(i, j)) * (probe[i] - exemplars(i, j));
    dist.push_back(std::sqrt(s));
  }
  return dist;
}

}  // namespace pcalda::kernels::serial
