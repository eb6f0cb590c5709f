#include "pcalda/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <cstddef>

namespace pcalda::kernels {

namespace {

// Minimum multiply-adds before a kernel forks.
constexpr std::size_t kParallelWork = 1 << 14;

using Index = std::ptrdiff_t;

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t m = a.rows();
  const std::size_t inner = a.cols();
  const Index n = static_cast<Index>(b.cols());
  Matrix c(m, b.cols());
  const bool wide = m * inner * b.cols() >= kParallelWork;

#pragma omp parallel for schedule(static) if (wide)
  for (Index j = 0; j < n; ++j) {
    auto out = c.col(static_cast<std::size_t>(j));
    auto bj = b.col(static_cast<std::size_t>(j));
    for (std::size_t k = 0; k < inner; ++k) {
      const double scale = bj[k];
      auto ak = a.col(k);
      for (std::size_t i = 0; i < m; ++i) out[i] += ak[i] * scale;
    }
  }
  return c;
}

Matrix transpose_matmul(const Matrix& a, const Matrix& b) {
  const std::size_t m = a.cols();
  const std::size_t inner = a.rows();
  const Index n = static_cast<Index>(b.cols());
  Matrix c(m, b.cols());
  const bool wide = m * inner * b.cols() >= kParallelWork;

#pragma omp parallel for schedule(static) if (wide)
  for (Index j = 0; j < n; ++j) {
    auto bj = b.col(static_cast<std::size_t>(j));
    auto out = c.col(static_cast<std::size_t>(j));
    for (std::size_t i = 0; i < m; ++i) {
      auto ai = a.col(i);
      double s = 0.0;
      for (std::size_t k = 0; k < inner; ++k) s += ai[k] * bj[k];
      out[i] = s;
    }
  }
  return c;
}

std::vector<double> column_mean(const Matrix& x) {
  const Index n = static_cast<Index>(x.rows());
  const std::size_t p = x.cols();
  std::vector<double> mean(x.rows());
  const bool wide = x.size() >= kParallelWork;

#pragma omp parallel for schedule(static) if (wide)
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < p; ++j) s += x(static_cast<std::size_t>(i), j);
    mean[static_cast<std::size_t>(i)] = s / static_cast<double>(p);
  }
  return mean;
}

Matrix center_columns(const Matrix& x, std::span<const double> mean) {
  Matrix out(x.rows(), x.cols());
  const Index p = static_cast<Index>(x.cols());
  const std::size_t n = x.rows();
  const bool wide = x.size() >= kParallelWork;

#pragma omp parallel for schedule(static) if (wide)
  for (Index j = 0; j < p; ++j) {
    auto src = x.col(static_cast<std::size_t>(j));
    auto dst = out.col(static_cast<std::size_t>(j));
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] - mean[i];
  }
  return out;
}

std::vector<double> column_distances(std::span<const double> probe, const Matrix& exemplars) {
  const Index p = static_cast<Index>(exemplars.cols());
  const std::size_t f = exemplars.rows();
  std::vector<double> dist(exemplars.cols());
  const bool wide = exemplars.size() >= kParallelWork;

#pragma omp parallel for schedule(static) if (wide)
  for (Index j = 0; j < p; ++j) {
    auto e = exemplars.col(static_cast<std::size_t>(j));
    double s = 0.0;
    for (std::size_t i = 0; i < f; ++i) {
      const double diff = probe[i] - e[i];
      s += diff * diff;
    }
    dist[static_cast<std::size_t>(j)] = std::sqrt(s);
  }
  return dist;
}

int max_threads() noexcept { return omp_get_max_threads(); }

}  // namespace pcalda::kernels
