#pragma once

// Dense exact linear algebra over a field F (Rat or Ext).

#include <cstddef>
#include <utility>
#include <vector>

#include "linecong/exact.hpp"

namespace linecong {

template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
Matrix<F> zeros(std::size_t rows, std::size_t cols) {
  return Matrix<F>(rows, std::vector<F>(cols, F(0)));
}

template <class F>
Matrix<F> transpose(const Matrix<F>& m) {
  if (m.empty()) return {};
  Matrix<F> t = zeros<F>(m[0].size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

template <class F>
struct Echelon {
  Matrix<F> rows;                  // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <class F>
Echelon<F> rref(Matrix<F> m) {
  Echelon<F> out;
  if (m.empty()) return out;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    F inv = F(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      F factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - factor * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).pivots.size();
}

/// Basis of { v : m v = 0 }, one vector per free column, in column order.
template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& m, std::size_t cols) {
  Echelon<F> e = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(cols, F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& m) {
  return nullspace(m, m.empty() ? 0 : m[0].size());
}

/// Basis of the row space (the nonzero rows of the rref).
template <class F>
std::vector<std::vector<F>> row_basis(const Matrix<F>& m) {
  return rref(m).rows;
}

/// Intersection of two subspaces given by spanning sets of row vectors.
template <class F>
std::vector<std::vector<F>> intersect_spans(const std::vector<std::vector<F>>& u,
                                            const std::vector<std::vector<F>>& v) {
  // Solve sum a_i u_i - sum b_j v_j = 0.
  if (u.empty() || v.empty()) return {};
  const std::size_t n = u[0].size();
  Matrix<F> m = zeros<F>(n, u.size() + v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) m[k][i] = u[i][k];
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t k = 0; k < n; ++k) m[k][u.size() + j] = -v[j][k];
  Matrix<F> out;
  for (const auto& c : nullspace(m)) {
    std::vector<F> w(n, F(0));
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t k = 0; k < n; ++k) w[k] = w[k] + c[i] * u[i][k];
    out.push_back(std::move(w));
  }
  return row_basis(out);
}

/// Determinant by elimination (field entries).
template <class F>
F det(Matrix<F> m) {
  const std::size_t n = m.size();
  F result(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m[p][c])) ++p;
    if (p == n) return F(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      result = -result;
    }
    result = result * m[c][c];
    F inv = F(1) / m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      F factor = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] = m[i][j] - factor * m[c][j];
    }
  }
  return result;
}

/// Unique solution of the square system m x = b, if m is invertible.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& m, const std::vector<F>& b) {
  const std::size_t n = m.size();
  Matrix<F> aug = m;
  for (std::size_t i = 0; i < n; ++i) aug[i].push_back(b[i]);
  Echelon<F> e = rref(aug);
  if (e.pivots.size() != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (e.pivots[i] != i) return std::nullopt;
  std::vector<F> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.rows[i][n];
  return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  const std::size_t n = m.size();
  Matrix<F> aug = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) aug[i].push_back(F(i == j ? 1 : 0));
  Echelon<F> e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv = zeros<F>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
  return inv;
}

template <class F>
std::vector<F> mat_vec(const Matrix<F>& m, const std::vector<F>& v) {
  std::vector<F> out(m.size(), F(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = out[i] + m[i][j] * v[j];
  return out;
}

}  // namespace linecong
