#include "pcalda/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "pcalda/error.hpp"

namespace pcalda {

namespace {

constexpr double kSymmetryTolerance = 1e-9;

void require_symmetric(const Matrix& a, const char* name) {
  if (!a.is_square())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("{} must be square, got {}", name, a.shape()));
  if (!a.all_finite())
    throw Error(ErrorCode::InvalidArgument, fmt::format("{} contains NaN or Inf", name));
  const double bound = kSymmetryTolerance * a.frobenius_norm();
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = j + 1; i < a.rows(); ++i)
      if (std::abs(a(i, j) - a(j, i)) > bound)
        throw Error(ErrorCode::NotSymmetric,
                    fmt::format("{0} is not symmetric: |a({1},{2}) - a({2},{1})| = {3:.3e}", name,
                                i, j, std::abs(a(i, j) - a(j, i))));
}

void require_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw Error(ErrorCode::InvalidArgument, fmt::format("tolerance must be positive, got {}", tol));
}

Matrix symmetrized(const Matrix& a) {
  Matrix s = a;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = j + 1; i < a.rows(); ++i) s(i, j) = s(j, i) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = j + 1; i < a.rows(); ++i) s += a(i, j) * a(i, j);
  return std::sqrt(2.0 * s);
}

// One Jacobi rotation zeroing a(p, q), accumulated into v.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
  const double c = 1.0 / std::hypot(t, 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  auto col_p = a.col(p);
  auto col_q = a.col(q);
  for (std::size_t k = 0; k < n; ++k) {
    const double akp = col_p[k];
    const double akq = col_q[k];
    col_p[k] = c * akp - s * akq;
    col_q[k] = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  auto vp = v.col(p);
  auto vq = v.col(q);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = vp[k];
    const double y = vq[k];
    vp[k] = c * x - s * y;
    vq[k] = s * x + c * y;
  }
}

EigenPairs sorted_pairs(const Matrix& diagonalized, const Matrix& rotations) {
  const std::size_t n = diagonalized.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return diagonalized(x, x) > diagonalized(y, y);
  });

  EigenPairs out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = diagonalized(order[j], order[j]);
    std::ranges::copy(rotations.col(order[j]), out.vectors.col(j).begin());
  }
  apply_sign_convention(out.vectors);
  return out;
}

}  // namespace

void apply_sign_convention(Matrix& vectors) {
  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    auto col = vectors.col(j);
    std::size_t lead = 0;
    for (std::size_t i = 1; i < col.size(); ++i)
      if (std::abs(col[i]) > std::abs(col[lead])) lead = i;
    if (col[lead] < 0.0)
      for (double& x : col) x = -x;
  }
}

EigenPairs symmetric_eigen(const Matrix& a, double tol) {
  require_tolerance(tol);
  require_symmetric(a, "matrix");

  Matrix work = symmetrized(a);
  Matrix v = Matrix::identity(a.rows());
  const double target = tol * work.frobenius_norm();
  const std::size_t n = a.rows();

  double off = off_diagonal_norm(work);
  for (int sweep = 0; off > target; ++sweep) {
    if (sweep == kJacobiSweepCap)
      throw Error(ErrorCode::NoConvergence,
                  fmt::format("Jacobi eigensolver did not converge after {} sweeps; "
                              "off-diagonal norm {:.3e} > {:.3e}",
                              kJacobiSweepCap, off, target));
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(work, v, p, q);
    off = off_diagonal_norm(work);
  }
  return sorted_pairs(work, v);
}

EigenPairs generalized_symmetric_eigen(const Matrix& s_b, const Matrix& s_w, double tol) {
  require_tolerance(tol);
  require_symmetric(s_b, "between-class scatter");
  require_symmetric(s_w, "within-class scatter");
  if (s_b.rows() != s_w.rows())
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("scatter matrices differ in size: {} vs {}", s_b.shape(), s_w.shape()));

  const EigenPairs within = symmetric_eigen(s_w, tol);
  const double smallest = within.values.back();
  if (smallest <= tol * s_w.frobenius_norm())
    throw Error(ErrorCode::NotPositiveDefinite,
                fmt::format("within-class scatter is singular (smallest eigenvalue {:.3e}); "
                            "reduce the PCA dimension to at most p - C",
                            smallest));

  // W = U·D^(-1/2)
  Matrix whiten = within.vectors;
  for (std::size_t j = 0; j < whiten.cols(); ++j) {
    const double scale = 1.0 / std::sqrt(within.values[j]);
    for (double& x : whiten.col(j)) x *= scale;
  }

  const Matrix reduced = symmetrized(transpose_matmul(whiten, matmul(s_b, whiten)));
  EigenPairs inner = symmetric_eigen(reduced, tol);

  Matrix w = matmul(whiten, inner.vectors);
  for (std::size_t j = 0; j < w.cols(); ++j) {
    auto col = w.col(j);
    const double len = norm2(col);
    for (double& x : col) x /= len;
  }
  apply_sign_convention(w);
  return {std::move(inner.values), std::move(w)};
}

}  // namespace pcalda
