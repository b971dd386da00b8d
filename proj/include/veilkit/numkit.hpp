#pragma once
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "veilkit/error.hpp"

namespace veilkit::numkit {

// Dense row-major matrix of doubles. Value type; all operations below are
// pure functions and safe to call concurrently on distinct or shared inputs.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Mat m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw ShapeError("from_rows: ragged input");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  Mat col(std::size_t j) const {
    Mat c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

inline Mat transpose(const Mat& m) {
  Mat t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

// C = A * B. The k-inner ordering keeps both B and C rows streaming, which
// the compiler vectorizes; training throughput depends on this kernel.
inline Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matmul: " + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()));
  Mat c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ar = a.row(i);
    double* cr = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = ar[k];
      if (aik == 0.0) continue;
      const double* br = b.row(k);
      for (std::size_t j = 0; j < n; ++j) cr[j] += aik * br[j];
    }
  }
  return c;
}

inline Mat operator*(const Mat& a, const Mat& b) { return matmul(a, b); }

inline Mat scaled(Mat m, double s) {
  for (double& v : m.data()) v *= s;
  return m;
}

inline Mat add(Mat a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("add: shape mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] += b.data()[i];
  return a;
}

inline double frobenius(const Mat& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

// Eigendecomposition result. `values` sorted non-increasing; the i-th column
// of `vectors` is the unit eigenvector paired with values[i], oriented so its
// largest-magnitude component is positive.
struct EigResult {
  std::vector<double> values;
  Mat vectors;
};

// Sample covariance (1/(n-1)) Xc^T Xc; columns centered when `center` is set.
inline Mat covariance(const Mat& x, bool center = true) {
  if (x.rows() < 2) throw ShapeError("covariance: need at least 2 rows");
  const std::size_t n = x.rows(), d = x.cols();
  std::vector<double> mean(d, 0.0);
  if (center) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) mean[j] += x(i, j);
    for (double& m : mean) m /= static_cast<double>(n);
  }
  Mat c(d, d);
  std::vector<double> xi(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) xi[j] = x(i, j) - mean[j];
    for (std::size_t p = 0; p < d; ++p) {
      const double v = xi[p];
      if (v == 0.0) continue;
      double* cr = c.row(p);
      for (std::size_t q = 0; q < d; ++q) cr[q] += v * xi[q];
    }
  }
  const double scale = 1.0 / static_cast<double>(n - 1);
  for (double& v : c.data()) v *= scale;
  // exact symmetry; accumulation order above already treats p,q alike
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q) {
      const double s = 0.5 * (c(p, q) + c(q, p));
      c(p, q) = c(q, p) = s;
    }
  return c;
}

namespace detail {

inline void require_symmetric(const Mat& m, double tol, const char* who) {
  if (m.rows() != m.cols()) throw ShapeError(std::string(who) + ": matrix not square");
  double scale = 1.0;
  for (double v : m.data()) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol * scale)
        throw ShapeError(std::string(who) + ": matrix not symmetric");
}

inline double offdiag_norm(const Mat& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Deterministic orientation: flip each column so that its entry of largest
// magnitude (first such index on ties) is positive.
inline void orient_columns(Mat& v) {
  for (std::size_t j = 0; j < v.cols(); ++j) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (v(arg, j) < 0.0)
      for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) = -v(i, j);
  }
}

inline void sort_descending(EigResult& r) {
  const std::size_t n = r.values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return r.values[a] > r.values[b]; });
  EigResult s;
  s.values.resize(n);
  s.vectors = Mat(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    s.values[k] = r.values[order[k]];
    for (std::size_t i = 0; i < n; ++i) s.vectors(i, k) = r.vectors(i, order[k]);
  }
  r = std::move(s);
}

}  // namespace detail

// Full spectrum of a symmetric matrix by cyclic Jacobi sweeps. Converges
// when the off-diagonal Frobenius norm drops below 1e-12 * ||M||_F, capped
// at 100 sweeps; plenty for the few-hundred-dimensional matrices used here.
inline EigResult sym_eig(const Mat& m) {
  detail::require_symmetric(m, 1e-8, "sym_eig");
  const std::size_t n = m.rows();
  Mat a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = a(j, i) = s;
    }
  Mat v = Mat::identity(n);
  const double target = 1e-12 * std::max(frobenius(m), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (detail::offdiag_norm(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        a(q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  EigResult r;
  r.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.values[i] = a(i, i);
  r.vectors = std::move(v);
  detail::sort_descending(r);
  detail::orient_columns(r.vectors);
  return r;
}

// Generalized symmetric problem A v = lambda B v, solved by whitening with
// the Cholesky factor of the ridged B. The ridge eps*I with
// eps = 1e-6 * trace(B)/dim is applied unconditionally: the within-class
// scatters this solver exists for are rank-deficient on one-hot features.
// Returned vectors satisfy v^T (B + eps I) v = 1.
inline EigResult generalized_eig(const Mat& a, const Mat& b) {
  detail::require_symmetric(a, 1e-8, "generalized_eig(A)");
  detail::require_symmetric(b, 1e-8, "generalized_eig(B)");
  if (a.rows() != b.rows()) throw ShapeError("generalized_eig: A and B differ in size");
  const std::size_t n = b.rows();

  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr += b(i, i);
  const double eps = 1e-6 * tr / static_cast<double>(n);
  Mat br = b;
  for (std::size_t i = 0; i < n; ++i) br(i, i) += eps;

  // Cholesky br = L L^T
  Mat l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = br(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0.0)
          throw SingularError("generalized_eig: B not positive definite after ridge");
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }

  // C = L^{-1} A L^{-T}: forward-substitute twice.
  auto forward_solve = [&](const Mat& rhs) {  // solves L Y = rhs
    Mat y(n, rhs.cols());
    for (std::size_t j = 0; j < rhs.cols(); ++j)
      for (std::size_t i = 0; i < n; ++i) {
        double s = rhs(i, j);
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y(k, j);
        y(i, j) = s / l(i, i);
      }
    return y;
  };
  Mat c = forward_solve(transpose(forward_solve(a)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = 0.5 * (c(i, j) + c(j, i));
      c(i, j) = c(j, i) = s;
    }

  EigResult inner = sym_eig(c);

  // Back-substitute L^T V = W.
  Mat vecs(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t ii = n; ii-- > 0;) {
      double s = inner.vectors(ii, j);
      for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * vecs(k, j);
      vecs(ii, j) = s / l(ii, ii);
    }
  detail::orient_columns(vecs);
  return {std::move(inner.values), std::move(vecs)};
}

}  // namespace veilkit::numkit
