#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>

#include "pcalda/eigen.hpp"
#include "pcalda/error.hpp"
#include "pcalda/matrix.hpp"
#include "support.hpp"

using namespace pcalda;
using pcalda::test::Rng;

namespace {

double reconstruction_error(const Matrix& a, const EigenPairs& e) {
  Matrix scaled = e.vectors;
  for (std::size_t j = 0; j < scaled.cols(); ++j)
    for (double& v : scaled.col(j)) v *= e.values[j];
  return max_abs_diff(matmul(scaled, e.vectors.transpose()), a);
}

double orthonormality_error(const Matrix& v) {
  return max_abs_diff(transpose_matmul(v, v), Matrix::identity(v.cols()));
}

double residual(const Matrix& a, std::span<const double> v, double lambda) {
  std::vector<double> av = matvec(a, v);
  for (std::size_t i = 0; i < av.size(); ++i) av[i] -= lambda * v[i];
  return norm2(av);
}

}  // namespace

TEST_CASE("matmul: identity and column selection") {
  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  CHECK(matmul(Matrix::identity(2), a) == a);
  CHECK(matmul(a, Matrix::from_rows({{0}, {1}})) == Matrix::from_rows({{2}, {4}}));
}

TEST_CASE("matmul: random 5x4 by 4x3 equals the triple-loop oracle") {
  Rng rng(11);
  const Matrix a = test::random_matrix(rng, 5, 4);
  const Matrix b = test::random_matrix(rng, 4, 3);
  CHECK(max_abs_diff(matmul(a, b), test::triple_loop_product(a, b)) <= 1e-15);
}

TEST_CASE("matmul: dimension mismatch names both shapes") {
  try {
    (void)matmul(Matrix(2, 3), Matrix(2, 3));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
    CHECK(std::string(e.what()).find("2x3") != std::string::npos);
  }
}

TEST_CASE("matmul: associative on random triples") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = test::random_matrix(rng, rng.index(1, 8), rng.index(1, 8));
    const Matrix b = test::random_matrix(rng, a.cols(), rng.index(1, 8));
    const Matrix c = test::random_matrix(rng, b.cols(), rng.index(1, 8));
    const Matrix left = matmul(matmul(a, b), c);
    const Matrix right = matmul(a, matmul(b, c));
    CHECK(max_abs_diff(left, right) <= 1e-10 * std::max(1.0, left.max_abs()));
  }
}

TEST_CASE("matrix: construction rejects empty and non-finite data") {
  CHECK_THROWS_AS(Matrix(0, 3), Error);
  CHECK_THROWS_AS(Matrix(1, 2, {1.0, NAN}), Error);
  CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), Error);
}

TEST_CASE("symmetric_eigen: classic 2x2") {
  const EigenPairs e = symmetric_eigen(Matrix::from_rows({{2, 1}, {1, 2}}));
  CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(e.vectors(0, 0) == doctest::Approx(h));
  CHECK(e.vectors(1, 0) == doctest::Approx(h));
  // Equal magnitudes: the lower index carries the positive sign.
  CHECK(e.vectors(0, 1) == doctest::Approx(h));
  CHECK(e.vectors(1, 1) == doctest::Approx(-h));
}

TEST_CASE("symmetric_eigen: diagonal input gives permuted identity") {
  const std::vector<double> diag{5, 2, 7};
  const EigenPairs e = symmetric_eigen(Matrix::diagonal(diag));
  CHECK(e.values == std::vector<double>{7, 5, 2});
  CHECK(e.vectors == Matrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
}

TEST_CASE("symmetric_eigen: random 6x6 reconstructs") {
  Rng rng(13);
  const Matrix a = test::random_symmetric(rng, 6);
  const EigenPairs e = symmetric_eigen(a);
  CHECK(reconstruction_error(a, e) <= 1e-8);
  CHECK(orthonormality_error(e.vectors) <= 1e-9);
  for (std::size_t j = 0; j < 6; ++j)
    CHECK(residual(a, e.vectors.col(j), e.values[j]) <= 1e-10 * a.frobenius_norm());
}

TEST_CASE("symmetric_eigen: invariants on random matrices up to 20x20") {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.index(1, 20);
    const Matrix a = test::random_symmetric(rng, n);
    const EigenPairs e = symmetric_eigen(a);
    const double fro = a.frobenius_norm();
    CHECK(std::ranges::is_sorted(e.values, std::greater<>{}));
    CHECK(reconstruction_error(a, e) <= 1e-8 * fro);
    CHECK(orthonormality_error(e.vectors) <= 1e-9);
    double sum = 0.0;
    for (double v : e.values) sum += v;
    CHECK(std::abs(sum - a.trace()) <= 1e-9 * std::max(1.0, std::abs(a.trace())));
    for (std::size_t j = 0; j < n; ++j) {
      auto col = e.vectors.col(j);
      std::size_t lead = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (std::abs(col[i]) > std::abs(col[lead])) lead = i;
      CHECK(col[lead] >= 0.0);
    }
  }
}

TEST_CASE("symmetric_eigen: repeated eigenvalues and the zero matrix") {
  const EigenPairs id = symmetric_eigen(Matrix::identity(4));
  CHECK(id.values == std::vector<double>(4, 1.0));
  CHECK(id.vectors == Matrix::identity(4));
  const EigenPairs zero = symmetric_eigen(Matrix(3, 3));
  CHECK(zero.values == std::vector<double>(3, 0.0));
}

TEST_CASE("symmetric_eigen: deterministic to the bit") {
  Rng rng(15);
  const Matrix a = test::random_symmetric(rng, 12);
  const EigenPairs x = symmetric_eigen(a);
  const EigenPairs y = symmetric_eigen(a);
  CHECK(x.vectors.bit_equal(y.vectors));
  CHECK(std::memcmp(x.values.data(), y.values.data(), x.values.size() * sizeof(double)) == 0);
}

TEST_CASE("symmetric_eigen: input errors") {
  CHECK_THROWS_WITH_AS(symmetric_eigen(Matrix(2, 3)), doctest::Contains("square"), Error);
  try {
    (void)symmetric_eigen(Matrix::from_rows({{1, 2}, {0, 1}}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymmetric);
  }
  CHECK_THROWS_AS(symmetric_eigen(Matrix::identity(2), 0.0), Error);
}

TEST_CASE("generalized_symmetric_eigen: diagonal with identity whitening") {
  const std::vector<double> b{9, 0};
  const EigenPairs e = generalized_symmetric_eigen(Matrix::diagonal(b), Matrix::identity(2));
  CHECK(e.values[0] == doctest::Approx(9.0));
  CHECK(std::abs(e.values[1]) <= 1e-12);
  CHECK(e.vectors == Matrix::identity(2));
}

TEST_CASE("generalized_symmetric_eigen: one-dimensional two-class case") {
  // Classes {1,2} and {4,5}: S_W = 0.25·4 = 1, S_B = 2·1.5² + 2·1.5² = 9.
  const EigenPairs e = generalized_symmetric_eigen(Matrix::from_rows({{9}}), Matrix::from_rows({{1}}));
  CHECK(std::abs(e.values[0] - 9.0) <= 1e-12);
  CHECK(e.vectors(0, 0) == 1.0);
}

TEST_CASE("generalized_symmetric_eigen: random SPD pair agrees with eig(S_W^-1 S_B)") {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix s_b = test::random_spd(rng, 4);
    const Matrix s_w = test::random_spd(rng, 4);
    const EigenPairs e = generalized_symmetric_eigen(s_b, s_w);

    const std::vector<double> oracle =
        test::nonsymmetric_real_eigenvalues(test::triple_loop_product(test::gauss_jordan_inverse(s_w), s_b));
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(e.values[j] == doctest::Approx(oracle[j]).epsilon(1e-7));
      const std::vector<double> bw = matvec(s_b, e.vectors.col(j));
      const std::vector<double> ww = matvec(s_w, e.vectors.col(j));
      double r = 0.0;
      for (std::size_t i = 0; i < 4; ++i) r += std::pow(bw[i] - e.values[j] * ww[i], 2);
      CHECK(std::sqrt(r) <= 1e-8 * s_b.frobenius_norm());
      CHECK(norm2(e.vectors.col(j)) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("generalized_symmetric_eigen: PSD S_B gives non-negative spectrum") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = rng.index(2, 8);
    const Matrix v = test::random_matrix(rng, n, 1);
    const Matrix s_b = matmul(v, v.transpose());  // rank one
    const EigenPairs e = generalized_symmetric_eigen(s_b, test::random_spd(rng, n));
    for (double x : e.values) CHECK(x >= -1e-10 * e.values.front());
  }
}

TEST_CASE("generalized_symmetric_eigen: singular S_W asks for a smaller PCA dimension") {
  try {
    (void)generalized_symmetric_eigen(Matrix::identity(2), Matrix::diagonal(std::vector<double>{1.0, 0.0}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
    CHECK(std::string(e.what()).find("PCA dimension") != std::string::npos);
  }
  CHECK_THROWS_AS(generalized_symmetric_eigen(Matrix::identity(2), Matrix::identity(3)), Error);
}
