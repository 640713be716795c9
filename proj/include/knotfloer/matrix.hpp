#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace knotfloer {

// Dense matrix over an exact ring/field T. T needs default construction to
// zero, ==, +, -, *.
template <class T>
struct Matrix {
  size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

  T& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const T& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  Matrix transposed() const {
    Matrix m(cols, rows);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  bool operator==(const Matrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  Matrix<T> r(x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      if (x(i, k) == T()) continue;
      for (size_t j = 0; j < y.cols; ++j) {
        if (y(k, j) == T()) continue;
        r(i, j) = r(i, j) + x(i, k) * y(k, j);
      }
    }
  return r;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix shape mismatch");
  Matrix<T> r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
  return r;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix shape mismatch");
  Matrix<T> r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
  return r;
}

template <class T>
bool is_zero_matrix(const Matrix<T>& m) {
  for (const auto& x : m.a)
    if (!(x == T())) return false;
  return true;
}

// Fraction-free Bareiss determinant. `exact_div` must perform exact division
// (the Bareiss divisors always divide).
template <class T>
T det_bareiss(Matrix<T> m, const std::function<T(const T&, const T&)>& exact_div) {
  if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
  size_t n = m.rows;
  if (n == 0) return T(1);
  T prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == T()) {
      size_t piv = k + 1;
      while (piv < n && m(piv, k) == T()) ++piv;
      if (piv == n) return T();
      for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        T num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = exact_div(num, prev);
      }
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  if (sign < 0) d = T() - d;
  return d;
}

// Fraction-free Bareiss rank over an integral domain.
template <class T>
size_t rank_bareiss(Matrix<T> m,
                    const std::function<T(const T&, const T&)>& exact_div) {
  size_t n = m.rows, c = m.cols, rank = 0;
  T prev(1);
  size_t row = 0;
  for (size_t col = 0; col < c && row < n; ++col) {
    size_t piv = row;
    while (piv < n && m(piv, col) == T()) ++piv;
    if (piv == n) continue;
    if (piv != row)
      for (size_t j = 0; j < c; ++j) std::swap(m(row, j), m(piv, j));
    for (size_t i = row + 1; i < n; ++i)
      for (size_t j = col + 1; j < c; ++j) {
        T num = m(i, j) * m(row, col) - m(i, col) * m(row, j);
        m(i, j) = exact_div(num, prev);
      }
    for (size_t i = row + 1; i < n; ++i) m(i, col) = T();
    prev = m(row, col);
    ++row;
    ++rank;
  }
  return rank;
}

// Gaussian elimination over a field F (needs operator/). Returns rank; if
// `kernel` given, fills a basis of the right kernel.
template <class F>
size_t rank_kernel_field(Matrix<F> m, std::vector<std::vector<F>>* kernel) {
  size_t n = m.rows, c = m.cols;
  std::vector<long> pivot_of_col(c, -1);
  size_t row = 0;
  for (size_t col = 0; col < c && row < n; ++col) {
    size_t piv = row;
    while (piv < n && m(piv, col) == F()) ++piv;
    if (piv == n) continue;
    if (piv != row)
      for (size_t j = 0; j < c; ++j) std::swap(m(row, j), m(piv, j));
    F inv = F(1) / m(row, col);
    for (size_t j = col; j < c; ++j)
      if (!(m(row, j) == F())) m(row, j) = m(row, j) * inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == row || m(i, col) == F()) continue;
      F f = m(i, col);
      for (size_t j = col; j < c; ++j)
        if (!(m(row, j) == F())) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivot_of_col[col] = static_cast<long>(row);
    ++row;
  }
  size_t rank = row;
  if (kernel) {
    kernel->clear();
    for (size_t col = 0; col < c; ++col) {
      if (pivot_of_col[col] >= 0) continue;
      std::vector<F> v(c);
      v[col] = F(1);
      for (size_t j = 0; j < c; ++j) {
        if (pivot_of_col[j] < 0) continue;
        v[j] = F() - m(static_cast<size_t>(pivot_of_col[j]), col);
      }
      kernel->push_back(std::move(v));
    }
  }
  return rank;
}

}  // namespace knotfloer
