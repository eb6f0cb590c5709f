#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace pcalda {

/// Dense real matrix stored column-major. Both dimensions are at least 1.
///
/// Columns are the natural unit throughout the library (one image, one
/// projection, one eigenvector per column), so col() hands out contiguous
/// spans.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> column_major);

  /// Row-wise literal, for tests and small constants: {{1, 2}, {3, 4}}.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_columns(const std::vector<std::vector<double>>& columns);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[c * rows_ + r]; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[c * rows_ + r]; }

  std::span<const double> col(std::size_t c) const noexcept {
    return {data_.data() + c * rows_, rows_};
  }
  std::span<double> col(std::size_t c) noexcept { return {data_.data() + c * rows_, rows_}; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Matrix transpose() const;
  /// Copy of the first `count` columns.
  Matrix leading_columns(std::size_t count) const;

  double frobenius_norm() const noexcept;
  double max_abs() const noexcept;
  double trace() const;
  bool all_finite() const noexcept;

  std::string shape() const;

  /// Bitwise comparison of dimensions and every stored double.
  bool bit_equal(const Matrix& other) const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// a·b. Throws DimensionMismatch naming both shapes.
Matrix matmul(const Matrix& a, const Matrix& b);
/// aᵀ·b without materializing the transpose.
Matrix transpose_matmul(const Matrix& a, const Matrix& b);
/// a·x for a column vector x.
std::vector<double> matvec(const Matrix& a, std::span<const double> x);
/// aᵀ·x.
std::vector<double> transpose_matvec(const Matrix& a, std::span<const double> x);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// max_ij |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

}  // namespace pcalda
