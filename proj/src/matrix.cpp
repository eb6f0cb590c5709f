#include "pcalda/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <fmt/format.h>

#include "pcalda/error.hpp"
#include "pcalda/kernels.hpp"

namespace pcalda {

namespace {

void require_nonempty(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0)
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("matrix dimensions must be positive, got {}x{}", rows, cols));
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{}: shapes {} and {} differ", what, a.shape(), b.shape()));
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  require_nonempty(rows, cols);
  data_.assign(rows * cols, 0.0);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
    : rows_(rows), cols_(cols), data_(std::move(column_major)) {
  require_nonempty(rows, cols);
  if (data_.size() != rows * cols)
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{}x{} matrix needs {} values, got {}", rows, cols, rows * cols,
                            data_.size()));
  if (!all_finite())
    throw Error(ErrorCode::InvalidArgument, "matrix data contains NaN or Inf");
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c)
      throw Error(ErrorCode::DimensionMismatch, "ragged row literal");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) throw Error(ErrorCode::InvalidArgument, "no columns");
  const std::size_t r = columns.front().size();
  std::vector<double> data;
  data.reserve(r * columns.size());
  for (const auto& c : columns) {
    if (c.size() != r) throw Error(ErrorCode::DimensionMismatch, "columns differ in length");
    data.insert(data.end(), c.begin(), c.end());
  }
  return Matrix(r, columns.size(), std::move(data));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::leading_columns(std::size_t count) const {
  if (count == 0 || count > cols_)
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("cannot take {} leading columns of {}", count, shape()));
  return Matrix(rows_, count,
                std::vector<double>(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(rows_ * count)));
}

double Matrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::trace() const {
  if (!is_square()) throw Error(ErrorCode::DimensionMismatch, "trace of non-square " + shape());
  double s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

std::string Matrix::shape() const { return fmt::format("{}x{}", rows_, cols_); }

bool Matrix::bit_equal(const Matrix& other) const noexcept {
  return rows_ == other.rows_ && cols_ == other.cols_ &&
         std::memcmp(data_.data(), other.data_.data(), data_.size() * sizeof(double)) == 0;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("matmul: cannot multiply {} by {}", a.shape(), b.shape()));
  return kernels::matmul(a, b);
}

Matrix transpose_matmul(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("transpose_matmul: cannot multiply ({})^T by {}", a.shape(), b.shape()));
  return kernels::transpose_matmul(a, b);
}

std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("matvec: {} matrix times vector of length {}", a.shape(), x.size()));
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    auto ak = a.col(k);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] += ak[i] * x[k];
  }
  return y;
}

std::vector<double> transpose_matvec(const Matrix& a, std::span<const double> x) {
  if (a.rows() != x.size())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("transpose_matvec: ({})^T times vector of length {}", a.shape(), x.size()));
  std::vector<double> y(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) y[j] = dot(a.col(j), x);
  return y;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "add");
  Matrix c = a;
  auto out = c.data();
  auto rhs = b.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "subtract");
  Matrix c = a;
  auto out = c.data();
  auto rhs = b.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs[i];
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (double& v : c.data()) v *= s;
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("dot: lengths {} and {} differ", x.size(), y.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

}  // namespace pcalda
