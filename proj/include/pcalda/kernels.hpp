#pragma once

// Data-parallel inner loops behind Matrix arithmetic, PCA centering and
// projection, and the kNN distance scan.
//
// Every kernel exists twice: the OpenMP version in pcalda::kernels and a
// plain loop-nest in pcalda::kernels::serial kept as the reference for tests
// and benchmarks. Each output element is produced by exactly one thread with
// the same summation order as the reference, so the two agree bit for bit
// regardless of thread count.

#include <span>
#include <vector>

#include "pcalda/matrix.hpp"

namespace pcalda::kernels {

/// a·b; caller guarantees a.cols() == b.rows().
Matrix matmul(const Matrix& a, const Matrix& b);
/// aᵀ·b; caller guarantees a.rows() == b.rows().
Matrix transpose_matmul(const Matrix& a, const Matrix& b);
/// Mean of the columns of x (length x.rows()).
std::vector<double> column_mean(const Matrix& x);
/// x with `mean` subtracted from every column.
Matrix center_columns(const Matrix& x, std::span<const double> mean);
/// Euclidean distance from probe to every column of exemplars.
std::vector<double> column_distances(std::span<const double> probe, const Matrix& exemplars);

namespace serial {

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose_matmul(const Matrix& a, const Matrix& b);
std::vector<double> column_mean(const Matrix& x);
Matrix center_columns(const Matrix& x, std::span<const double> mean);
std::vector<double> column_distances(std::span<const double> probe, const Matrix& exemplars);

}  // namespace serial

/// Threads OpenMP will use for the parallel kernels.
int max_threads() noexcept;

}  // namespace pcalda::kernels
