#pragma once

// Small dense matrices over any of the scalar types.

#include <vector>

#include "heckecell/kscalar.hpp"

namespace heckecell {

template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const T& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (int j = 0; j < y.cols; ++j)
          if (!y(k, j).is_zero()) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  friend Mat operator+(Mat x, const Mat& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
  }
  friend Mat operator-(Mat x, const Mat& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
  }
  friend bool operator==(const Mat& x, const Mat& y) { return x.rows == y.rows && x.cols == y.cols && x.a == y.a; }

  bool is_zero() const {
    for (const auto& x : a)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_symmetric() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
      for (int j = i + 1; j < cols; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }
};

using FMatrix = Mat<FieldScalar>;
using KMatrix = Mat<KScalar>;
using LMatrix = Mat<LaurentPoly>;

template <class T>
Mat<T> identity_matrix(int n, const T& one) {
  Mat<T> m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = one;
  return m;
}

// Fraction-free Bareiss determinant; every division is exact.
inline LaurentPoly determinant(LMatrix m, int gamma_rank) {
  const int n = m.rows;
  if (n == 0) return LaurentPoly::one(gamma_rank);
  LaurentPoly prev = LaurentPoly::one(gamma_rank);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k).is_zero()) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (!m(r, k).is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) return LaurentPoly();
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        LaurentPoly t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        auto q = t.try_divide(prev);
        if (!q) throw InternalError("Bareiss division was not exact");
        m(i, j) = std::move(*q);
      }
    prev = m(k, k);
  }
  LaurentPoly d = m(n - 1, n - 1);
  return sign > 0 ? d : -d;
}

// Exact determinant over a field-like scalar type by Gaussian elimination.
template <class T>
T determinant_field(Mat<T> m, const T& one) {
  const int n = m.rows;
  T det = one;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return T();
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det = det * m(c, c);
    T inv = m(c, c).inverse();
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      T f = m(r, c) * inv;
      for (int j = c; j < n; ++j) m(r, j) = m(r, j) - f * m(c, j);
    }
  }
  return det;
}

// Inverse by Gauss-Jordan; throws on a singular matrix.
template <class T>
Mat<T> inverse_field(Mat<T> m, const T& one) {
  const int n = m.rows;
  Mat<T> inv = identity_matrix<T>(n, one);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error("singular matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(m(piv, j), m(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    T p = m(c, c).inverse();
    for (int j = 0; j < n; ++j) {
      m(c, j) = m(c, j) * p;
      inv(c, j) = inv(c, j) * p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      T f = m(r, c);
      for (int j = 0; j < n; ++j) {
        m(r, j) = m(r, j) - f * m(c, j);
        inv(r, j) = inv(r, j) - f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace heckecell
