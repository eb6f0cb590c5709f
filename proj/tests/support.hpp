#pragma once

// Test-only helpers: seeded generators, a scratch directory, and the
// independent oracles the library is checked against. Nothing here calls
// into the code paths it verifies.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcalda/matrix.hpp"

namespace pcalda::test {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = -1.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform();
  return m;
}

inline Matrix random_symmetric(Rng& rng, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < n; ++i) m(i, j) = m(j, i) = rng.uniform();
  return m;
}

inline Matrix random_spd(Rng& rng, std::size_t n) {
  const Matrix a = random_matrix(rng, n, n);
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * a(j, k);
      s(i, j) = acc + (i == j ? 0.5 : 0.0);
    }
  return s;
}

// ---- oracles ---------------------------------------------------------------

inline Matrix triple_loop_product(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      long double s = 0.0L;
      for (std::size_t k = 0; k < a.cols(); ++k) s += static_cast<long double>(a(i, k)) * b(k, j);
      c(i, j) = static_cast<double>(s);
    }
  return c;
}

/// Gauss–Jordan inverse with partial pivoting.
inline Matrix gauss_jordan_inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::vector<double>> aug(n, std::vector<double>(2 * n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a(i, j);
    aug[i][n + i] = 1.0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
    std::swap(aug[col], aug[pivot]);
    const double d = aug[col][col];
    for (double& v : aug[col]) v /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = aug[r][col];
      for (std::size_t j = 0; j < 2 * n; ++j) aug[r][j] -= factor * aug[col][j];
    }
  }
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug[i][n + j];
  return inv;
}

/// Eigenvalues of a general real matrix with a real spectrum: characteristic
/// polynomial by Faddeev–LeVerrier, roots by Durand–Kerner. Sorted
/// descending. Meant for n ≤ 6.
inline std::vector<double> nonsymmetric_real_eigenvalues(const Matrix& m) {
  const std::size_t n = m.rows();
  // char poly: λ^n + c[1] λ^(n-1) + ... + c[n]
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  Matrix mk = Matrix::identity(n);  // M_0 = 0, M_1 = I
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix am = triple_loop_product(m, mk);
    c[k] = -am.trace() / static_cast<double>(k);
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c[k];
    mk = am;
  }
  using cd = std::complex<double>;
  std::vector<cd> roots(n);
  const cd seed(0.4, 0.9);
  for (std::size_t i = 0; i < n; ++i) roots[i] = std::pow(seed, static_cast<double>(i));
  double scale = 1.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  for (cd& r : roots) r *= scale;
  auto poly = [&](cd x) {
    cd v = 1.0;
    for (std::size_t k = 1; k <= n; ++k) v = v * x + c[k];
    return v;
  };
  for (int iter = 0; iter < 5000; ++iter)
    for (std::size_t i = 0; i < n; ++i) {
      cd denom = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      roots[i] -= poly(roots[i]) / denom;
    }
  std::vector<double> out;
  for (const cd& r : roots) out.push_back(r.real());
  std::ranges::sort(out, std::greater<>{});
  return out;
}

/// Scatter of columns about per-class means, straight from the definition,
/// accumulated in long double.
inline Matrix literal_within_scatter(const Matrix& z, const std::vector<std::size_t>& labels,
                                     std::size_t classes) {
  const std::size_t d = z.rows();
  Matrix s(d, d);
  for (std::size_t c = 0; c < classes; ++c) {
    std::vector<long double> mean(d, 0.0L);
    std::size_t count = 0;
    for (std::size_t i = 0; i < z.cols(); ++i)
      if (labels[i] == c) {
        for (std::size_t r = 0; r < d; ++r) mean[r] += z(r, i);
        ++count;
      }
    for (auto& v : mean) v /= static_cast<long double>(count);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        long double acc = 0.0L;
        for (std::size_t i = 0; i < z.cols(); ++i)
          if (labels[i] == c) acc += (z(a, i) - mean[a]) * (z(b, i) - mean[b]);
        s(a, b) += static_cast<double>(acc);
      }
  }
  return s;
}

inline Matrix total_scatter(const Matrix& z) {
  const std::size_t d = z.rows();
  std::vector<long double> mean(d, 0.0L);
  for (std::size_t i = 0; i < z.cols(); ++i)
    for (std::size_t r = 0; r < d; ++r) mean[r] += z(r, i);
  for (auto& v : mean) v /= static_cast<long double>(z.cols());
  Matrix s(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      long double acc = 0.0L;
      for (std::size_t i = 0; i < z.cols(); ++i) acc += (z(a, i) - mean[a]) * (z(b, i) - mean[b]);
      s(a, b) = static_cast<double>(acc);
    }
  return s;
}

/// Distance accumulated back to front in long double.
inline double reverse_sum_distance(const std::vector<double>& x, const std::vector<double>& y) {
  long double s = 0.0L;
  for (std::size_t i = x.size(); i-- > 0;) s += static_cast<long double>(x[i] - y[i]) * (x[i] - y[i]);
  return static_cast<double>(std::sqrt(s));
}

struct NaiveVerdict {
  std::size_t winner;
  std::vector<std::size_t> votes;
  bool tie;
};

/// Full sort of (distance, index), then the documented vote and tie rules.
inline NaiveVerdict naive_knn(const std::vector<double>& dist, const std::vector<std::size_t>& labels,
                              std::size_t classes, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t j = 0; j < dist.size(); ++j) all.emplace_back(dist[j], j);
  std::ranges::sort(all);
  NaiveVerdict v{0, std::vector<std::size_t>(classes, 0), false};
  for (std::size_t n = 0; n < k; ++n) ++v.votes[labels[all[n].second]];
  const std::size_t top = *std::ranges::max_element(v.votes);
  std::vector<std::pair<double, std::size_t>> candidates;  // (nearest distance, class)
  for (std::size_t c = 0; c < classes; ++c) {
    if (v.votes[c] != top) continue;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < k; ++n)
      if (labels[all[n].second] == c) nearest = std::min(nearest, all[n].first);
    candidates.emplace_back(nearest, c);
  }
  std::ranges::sort(candidates);
  v.winner = candidates.front().second;
  v.tie = candidates.size() > 1;
  return v;
}

// ---- filesystem ------------------------------------------------------------

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "pcalda-test-XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

 private:
  std::filesystem::path path_;
};

inline void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << bytes;
}

inline std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// P5 file with the given row-major raster.
inline std::string pgm_bytes(std::size_t width, std::size_t height, unsigned maxval,
                             const std::vector<unsigned char>& raster) {
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n" +
                    std::to_string(maxval) + "\n";
  out.append(raster.begin(), raster.end());
  return out;
}

}  // namespace pcalda::test
