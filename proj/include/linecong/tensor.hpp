#pragma once

// 2x2x2 coefficient tensors of trilinear forms and 2-vectors of linear forms,
// over Rat or Ext. Entry (i, j, k) is the coefficient of s_i t_j u_k.

#include <array>

#include "linecong/exact.hpp"
#include "linecong/linalg.hpp"
#include "linecong/mpoly.hpp"

namespace linecong {

template <class F>
using Tri = std::array<F, 8>;
template <class F>
using Lin = std::array<F, 2>;  // c0 * v0 + c1 * v1
template <class F>
using Vec4 = std::array<F, 4>;

constexpr int tri_index(int i, int j, int k) { return i * 4 + j * 2 + k; }

template <class F>
Tri<F> tri_zero() {
  Tri<F> t;
  t.fill(F(0));
  return t;
}

template <class F>
Tri<F> tri_cast(const std::array<Rat, 8>& t) {
  Tri<F> r;
  for (int i = 0; i < 8; ++i) r[i] = F(t[i]);
  return r;
}

template <class F>
Tri<F> outer(const Lin<F>& a, const Lin<F>& b, const Lin<F>& c) {
  Tri<F> t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) t[tri_index(i, j, k)] = a[i] * b[j] * c[k];
  return t;
}

template <class F>
Tri<F> operator+(const Tri<F>& x, const Tri<F>& y) {
  Tri<F> r;
  for (int i = 0; i < 8; ++i) r[i] = x[i] + y[i];
  return r;
}

template <class F>
Tri<F> scaled(const Tri<F>& x, const F& k) {
  Tri<F> r;
  for (int i = 0; i < 8; ++i) r[i] = x[i] * k;
  return r;
}

/// <L, Phi> for a covector L and the coefficient tensors of f0..f3.
template <class F>
Tri<F> bracket(const Vec4<F>& L, const std::array<std::array<Rat, 8>, 4>& phi) {
  Tri<F> r = tri_zero<F>();
  for (int i = 0; i < 4; ++i)
    for (int m = 0; m < 8; ++m) r[m] = r[m] + L[i] * F(phi[i][m]);
  return r;
}

/// Flattening along factor `which` (0, 1, 2): 2x4 matrix.
template <class F>
Matrix<F> tri_flatten(const Tri<F>& t, int which) {
  Matrix<F> M = zeros<F>(2, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const F& v = t[tri_index(i, j, k)];
        if (which == 0) M[i][j * 2 + k] = v;
        if (which == 1) M[j][i * 2 + k] = v;
        if (which == 2) M[k][i * 2 + j] = v;
      }
  return M;
}

template <class F>
bool is_rank_one(const Tri<F>& t) {
  if (is_zero_vec(t)) return false;
  for (int w = 0; w < 3; ++w)
    if (rank(tri_flatten(t, w)) > 1) return false;
  return true;
}

template <class F>
struct TriSplit {
  Lin<F> a, b, c;
};

/// Exact factorization t = a (x) b (x) c of a rank-one tensor.
template <class F>
TriSplit<F> tri_split(const Tri<F>& t) {
  if (!is_rank_one(t)) fail(ErrorKind::Indecomposable, "tensor is not rank one");
  int p = 0;
  while (is_zero(t[p])) ++p;
  const int i0 = p / 4, j0 = (p / 2) % 2, k0 = p % 2;
  const F inv = F(1) / t[p];
  TriSplit<F> s;
  for (int i = 0; i < 2; ++i) s.a[i] = t[tri_index(i, j0, k0)] * inv;
  for (int j = 0; j < 2; ++j) s.b[j] = t[tri_index(i0, j, k0)];
  for (int k = 0; k < 2; ++k) s.c[k] = t[tri_index(i0, j0, k)] * inv;
  return s;
}

/// Given t = a (x) b (x) c with two of the factors known, returns the third.
/// `missing` names the unknown factor (0, 1, 2); throws InconsistentData if
/// no such factor exists.
template <class F>
Lin<F> tri_complete(const Tri<F>& t, int missing, const Lin<F>& f1, const Lin<F>& f2) {
  // f1, f2 are the known factors in factor order with `missing` skipped.
  int p1 = is_zero(f1[0]) ? 1 : 0, p2 = is_zero(f2[0]) ? 1 : 0;
  if (is_zero(f1[p1]) || is_zero(f2[p2])) fail(ErrorKind::InconsistentData, "zero linear factor");
  const F inv = F(1) / (f1[p1] * f2[p2]);
  Lin<F> x;
  for (int m = 0; m < 2; ++m) {
    int idx = missing == 0 ? tri_index(m, p1, p2) : missing == 1 ? tri_index(p1, m, p2) : tri_index(p1, p2, m);
    x[m] = t[idx] * inv;
  }
  Tri<F> back = missing == 0 ? outer(x, f1, f2) : missing == 1 ? outer(f1, x, f2) : outer(f1, f2, x);
  if (back != t) fail(ErrorKind::InconsistentData, "tensor does not factor through the given linear forms");
  return x;
}

/// Coordinates of t in the product basis a_i (x) b_j (x) c_k, where the rows
/// of ma, mb, mc hold the two basis forms of each factor.
template <class F>
Tri<F> change_basis(const Tri<F>& t, const Matrix<F>& ma, const Matrix<F>& mb, const Matrix<F>& mc) {
  auto ia = inverse(ma), ib = inverse(mb), ic = inverse(mc);
  if (!ia || !ib || !ic) fail(ErrorKind::DegenerateConfiguration, "dependent linear forms in a factor");
  Tri<F> r = tri_zero<F>();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q)
            for (int w = 0; w < 2; ++w)
              r[tri_index(i, j, k)] =
                  r[tri_index(i, j, k)] + t[tri_index(p, q, w)] * (*ia)[p][i] * (*ib)[q][j] * (*ic)[w][k];
  return r;
}

/// The point (v0 : v1) where the linear form vanishes.
template <class F>
Lin<F> lin_root(const Lin<F>& a) {
  return {a[1], -a[0]};
}

template <class F>
bool lin_proportional(const Lin<F>& a, const Lin<F>& b) {
  return is_zero(a[0] * b[1] - a[1] * b[0]);
}

inline MPoly lin_poly(Block b, const Lin<Rat>& a) {
  MPoly p = MPoly::var(b, 0) * a[0] + MPoly::var(b, 1) * a[1];
  if (p.is_zero()) {
    MultiDeg d{0, 0, 0, 0};
    d[static_cast<int>(b)] = 1;
    return MPoly::zero(d);
  }
  return p;
}

}  // namespace linecong
