#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nilvar/numeric.hpp"

namespace nilvar {

// Dense matrix over an exact coefficient type (Rat, Fp, or Int for the pure
// lattice computations).  Row-major storage; all elimination is exact.
template <class T>
struct Matrix {
  int r = 0, c = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(int rows, int cols) : r(rows), c(cols), a(size_t(rows) * cols) {}
  Matrix(int rows, int cols, std::vector<T> data)
      : r(rows), c(cols), a(std::move(data)) {
    assert(a.size() == size_t(r) * c);
  }

  T& at(int i, int j) {
    assert(0 <= i && i < r && 0 <= j && j < c);
    return a[size_t(i) * c + j];
  }
  const T& at(int i, int j) const {
    assert(0 <= i && i < r && 0 <= j && j < c);
    return a[size_t(i) * c + j];
  }

  static Matrix identity(int n, const T& one) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  bool is_zero() const {
    for (const T& x : a)
      if (!nilvar::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix m(c, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    assert(x.c == y.r);
    Matrix m(x.r, y.c);
    for (int i = 0; i < x.r; ++i)
      for (int k = 0; k < x.c; ++k) {
        const T& xik = x.at(i, k);
        if (nilvar::is_zero(xik)) continue;
        for (int j = 0; j < y.c; ++j) m.at(i, j) = m.at(i, j) + xik * y.at(k, j);
      }
    return m;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    assert(x.r == y.r && x.c == y.c);
    Matrix m(x.r, x.c);
    for (size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
    return m;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    assert(x.r == y.r && x.c == y.c);
    Matrix m(x.r, x.c);
    for (size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] - y.a[i];
    return m;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.r != y.r || x.c != y.c) return false;
    for (size_t i = 0; i < x.a.size(); ++i)
      if (!(x.a[i] == y.a[i])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  // Columns side by side.
  static Matrix hcat(const Matrix& x, const Matrix& y) {
    assert(x.r == y.r);
    Matrix m(x.r, x.c + y.c);
    for (int i = 0; i < x.r; ++i) {
      for (int j = 0; j < x.c; ++j) m.at(i, j) = x.at(i, j);
      for (int j = 0; j < y.c; ++j) m.at(i, x.c + j) = y.at(i, j);
    }
    return m;
  }

  // Rows stacked on top of each other.
  static Matrix vcat(const Matrix& x, const Matrix& y) {
    assert(x.c == y.c);
    Matrix m(x.r + y.r, x.c);
    for (int i = 0; i < x.r; ++i)
      for (int j = 0; j < x.c; ++j) m.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.r; ++i)
      for (int j = 0; j < y.c; ++j) m.at(x.r + i, j) = y.at(i, j);
    return m;
  }

  Matrix columns(const std::vector<int>& idx) const {
    Matrix m(r, int(idx.size()));
    for (int j = 0; j < int(idx.size()); ++j)
      for (int i = 0; i < r; ++i) m.at(i, j) = at(i, idx[j]);
    return m;
  }
};

// Reduced row echelon form in place; returns pivot column indices.
// Works over any exact field type providing is_zero/inv.
template <class T>
std::vector<int> rref(Matrix<T>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.c && row < m.r; ++col) {
    int sel = -1;
    for (int i = row; i < m.r; ++i)
      if (!is_zero(m.at(i, col))) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.c; ++j) std::swap(m.at(sel, j), m.at(row, j));
    T piv_inv = inv(m.at(row, col));
    for (int j = col; j < m.c; ++j) m.at(row, j) = m.at(row, j) * piv_inv;
    for (int i = 0; i < m.r; ++i) {
      if (i == row || is_zero(m.at(i, col))) continue;
      T f = m.at(i, col);
      for (int j = col; j < m.c; ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
int rank(const Matrix<T>& m) {
  Matrix<T> w = m;
  return int(rref(w).size());
}

// Fraction-free rank over the rationals: rows are scaled to integers, then
// Bareiss elimination keeps every intermediate entry an exact integer.
inline int rank(const Matrix<Rat>& m) {
  int r = m.r, c = m.c;
  std::vector<std::vector<Int>> w(r, std::vector<Int>(c));
  for (int i = 0; i < r; ++i) {
    Int lcm = 1;
    for (int j = 0; j < c; ++j) {
      Int den = m.at(i, j).get_den();
      lcm = lcm / gcd(lcm, den) * den;
    }
    for (int j = 0; j < c; ++j) {
      Rat x = m.at(i, j) * Rat(lcm);
      assert(x.get_den() == 1);
      w[i][j] = x.get_num();
    }
  }
  int rk = 0;
  Int prev = 1;
  for (int col = 0; col < c && rk < r; ++col) {
    int sel = -1;
    for (int i = rk; i < r; ++i)
      if (w[i][col] != 0) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(w[sel], w[rk]);
    for (int i = rk + 1; i < r; ++i) {
      for (int j = col + 1; j < c; ++j) {
        w[i][j] = (w[rk][col] * w[i][j] - w[i][col] * w[rk][j]) / prev;
      }
      w[i][col] = 0;
    }
    prev = w[rk][col];
    ++rk;
  }
  return rk;
}

// Basis of the null space {x : m x = 0}, returned as columns.  `one` supplies
// the field's unit (needed to seed free coordinates, e.g. with the modulus).
template <class T>
Matrix<T> kernel_basis(const Matrix<T>& m, const T& one) {
  Matrix<T> w = m;
  std::vector<int> pivots = rref(w);
  std::vector<bool> is_pivot(m.c, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < m.c; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix<T> k(m.c, int(free_cols.size()));
  for (int f = 0; f < int(free_cols.size()); ++f) {
    int fc = free_cols[f];
    k.at(fc, f) = one;
    for (int p = 0; p < int(pivots.size()); ++p)
      k.at(pivots[p], f) = -w.at(p, fc);
  }
  return k;
}

// Solve m x = b for a single column b; std::nullopt when inconsistent.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& m, const Matrix<T>& b,
                               const T& one) {
  assert(b.c == 1 && b.r == m.r);
  Matrix<T> aug = Matrix<T>::hcat(m, b);
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.c) return std::nullopt;
  Matrix<T> x(m.c, 1);
  (void)one;
  for (int p = 0; p < int(pivots.size()); ++p)
    x.at(pivots[p], 0) = aug.at(p, m.c);
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m, const T& one) {
  assert(m.r == m.c);
  Matrix<T> aug = Matrix<T>::hcat(m, Matrix<T>::identity(m.r, one));
  std::vector<int> pivots = rref(aug);
  // The identity block keeps the augmented rank at m.r regardless of m; m is
  // invertible exactly when every pivot stays inside the original columns.
  if (int(pivots.size()) != m.r || (m.r > 0 && pivots.back() >= m.r))
    return std::nullopt;
  Matrix<T> inv_m(m.r, m.r);
  for (int i = 0; i < m.r; ++i)
    for (int j = 0; j < m.r; ++j) inv_m.at(i, j) = aug.at(i, m.r + j);
  return inv_m;
}

// Basis of the column span, as columns (the pivot columns of m).
template <class T>
Matrix<T> image_basis(const Matrix<T>& m) {
  Matrix<T> w = m;
  std::vector<int> pivots = rref(w);
  return m.columns(pivots);
}

// Does the column span of sub lie inside the column span of big?
template <class T>
bool span_contains(const Matrix<T>& big, const Matrix<T>& sub) {
  assert(big.r == sub.r);
  int rb = rank(big);
  return rank(Matrix<T>::hcat(big, sub)) == rb;
}

// Intersection of two column spans, as columns.
template <class T>
Matrix<T> span_intersection(const Matrix<T>& x, const Matrix<T>& y,
                            const T& one) {
  assert(x.r == y.r);
  // Null space of [x | -y] yields coefficient pairs; the x-part spans the
  // intersection.
  Matrix<T> neg_y = y;
  for (T& v : neg_y.a) v = -v;
  Matrix<T> k = kernel_basis(Matrix<T>::hcat(x, neg_y), one);
  Matrix<T> coeff(x.c, k.c);
  for (int i = 0; i < x.c; ++i)
    for (int j = 0; j < k.c; ++j) coeff.at(i, j) = k.at(i, j);
  return image_basis(x * coeff);
}

}  // namespace nilvar
