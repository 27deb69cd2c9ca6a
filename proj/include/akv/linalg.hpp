#pragma once

// Small dense linear algebra over arbitrary scalar rings (double, nested
// duals, Cx<...> of those). Dimensions are tiny (<= 8), so storage is
// fixed-capacity and algorithms are straightforward Gaussian elimination
// with partial pivoting. Pivot comparisons look only at the value part of
// a scalar, which keeps elimination smooth under dual-number evaluation.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

#include "akv/cx.hpp"
#include "akv/dual.hpp"

namespace akv {

inline constexpr int kMaxDim = 8;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
struct Vec {
  int n = 0;
  std::array<T, kMaxDim> a{};

  Vec() = default;
  explicit Vec(int n_) : n(n_) {}
  Vec(std::initializer_list<T> xs) : n(int(xs.size())) {
    int i = 0;
    for (const T& x : xs) a[i++] = x;
  }
  T& operator[](int i) { return a[i]; }
  const T& operator[](int i) const { return a[i]; }
};

template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::array<T, kMaxDim * kMaxDim> a{};

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c) {}
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  T& operator()(int i, int j) { return a[i * cols + j]; }
  const T& operator()(int i, int j) const { return a[i * cols + j]; }

  Mat operator*(const Mat& o) const {
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const T& x = (*this)(i, k);
        for (int j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }
  Vec<T> operator*(const Vec<T>& v) const {
    Vec<T> r(rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }
  Mat operator+(const Mat& o) const {
    Mat r = *this;
    for (int i = 0; i < rows * cols; ++i) r.a[i] += o.a[i];
    return r;
  }
  Mat operator-(const Mat& o) const {
    Mat r = *this;
    for (int i = 0; i < rows * cols; ++i) r.a[i] -= o.a[i];
    return r;
  }
  Mat operator*(const T& s) const {
    Mat r = *this;
    for (int i = 0; i < rows * cols; ++i) r.a[i] *= s;
    return r;
  }
  Mat transposed() const {
    Mat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
};

// Magnitude of the value part, used for pivoting and residuals.
template <class T> double mag(const T& x) { return cx_abs(x); }

// In-place Gauss-Jordan inverse with partial pivoting.
template <class T>
Mat<T> inverse(Mat<T> m, double singular_tol = 1e-13) {
  if (m.rows != m.cols) throw Error("inverse: matrix not square");
  const int n = m.rows;
  Mat<T> inv = Mat<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (mag(m(r, col)) > mag(m(piv, col))) piv = r;
    if (mag(m(piv, col)) < singular_tol) throw Error("inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    T d = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) = m(col, j) / d;
      inv(col, j) = inv(col, j) / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      T f = m(r, col);
      if (mag(f) == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

template <class T>
T det(Mat<T> m) {
  const int n = m.rows;
  T d = T(1);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (mag(m(r, col)) > mag(m(piv, col))) piv = r;
    if (mag(m(piv, col)) == 0.0) return T(0);
    if (piv != col) {
      d = -d;
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
    }
    d *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      T f = m(r, col) / m(col, col);
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return d;
}

// Matrix exponential by plain Taylor series. The callers feed generators
// that vanish at the expansion point, so convergence is immediate; the
// term count covers the general small-norm case as well.
template <class T>
Mat<T> expm(const Mat<T>& m, int terms = 20) {
  Mat<T> sum = Mat<T>::identity(m.rows);
  Mat<T> acc = Mat<T>::identity(m.rows);
  for (int k = 1; k <= terms; ++k) {
    acc = acc * m;
    acc = acc * (T(1) / T(double(k)));
    sum = sum + acc;
  }
  return sum;
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix (double only).
// Returns eigenvalues ascending and the orthogonal matrix V with
// A = V diag(w) V^T.
inline void jacobi_eigen(Mat<double> a, Vec<double>& w, Mat<double>& v,
                         int sweeps = 64) {
  const int n = a.rows;
  v = Mat<double>::identity(n);
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  w = Vec<double>(n);
  for (int i = 0; i < n; ++i) w[i] = a(i, i);
  // sort ascending, permute V accordingly
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (w[j] < w[i]) {
        std::swap(w[i], w[j]);
        for (int k = 0; k < n; ++k) std::swap(v(k, i), v(k, j));
      }
}

template <class T>
Mat<Cx<T>> complexify(const Mat<T>& m) {
  Mat<Cx<T>> r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(i, j) = Cx<T>(m(i, j));
  return r;
}

template <class T>
Mat<Cx<T>> conj(const Mat<Cx<T>>& m) {
  Mat<Cx<T>> r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(i, j) = conj(m(i, j));
  return r;
}

template <class T>
double max_abs(const Mat<T>& m) {
  double r = 0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r = std::max(r, mag(m(i, j)));
  return r;
}

}  // namespace akv
