#pragma once

// Lines of P^3 as points of the Klein quadric.
//
// A line is a 6-vector in the order (c01, c02, c03, c23, c31, c12), where
// c_ij = a_i b_j - a_j b_i for two points a, b of the line. The dual swap
// (c23, c31, c12, c01, c02, c03) turns plane-wedge coordinates into point-wedge
// coordinates and back.

#include <array>
#include <optional>
#include <vector>

#include "linecong/exact.hpp"
#include "linecong/linalg.hpp"

namespace linecong {

template <class F>
using Line6 = std::array<F, 6>;
template <class F>
using Pt4 = std::array<F, 4>;

using Line = Line6<Rat>;
using Pt = Pt4<Rat>;
using Plane = Pt4<Rat>;

template <class F>
Line6<F> wedge(const Pt4<F>& a, const Pt4<F>& b) {
  auto m = [&](int i, int j) -> F { return a[i] * b[j] - a[j] * b[i]; };
  return {m(0, 1), m(0, 2), m(0, 3), m(2, 3), m(3, 1), m(1, 2)};
}

template <class F>
Line6<F> dual_swap(const Line6<F>& v) {
  return {v[3], v[4], v[5], v[0], v[1], v[2]};
}

template <class F>
Line6<F> line_from_points(const Pt4<F>& a, const Pt4<F>& b) {
  Line6<F> l = wedge(a, b);
  if (is_zero_vec(l)) fail(ErrorKind::CoincidentPoints, "points " + vec_str(a) + " and " + vec_str(b) + " coincide");
  return l;
}

template <class F>
Line6<F> line_from_planes(const Pt4<F>& alpha, const Pt4<F>& beta) {
  Line6<F> g = wedge(alpha, beta);
  if (is_zero_vec(g))
    fail(ErrorKind::CoincidentPlanes, "planes " + vec_str(alpha) + " and " + vec_str(beta) + " coincide");
  return dual_swap(g);
}

template <class F>
F klein_pairing(const Line6<F>& l, const Line6<F>& m) {
  return l[0] * m[3] + l[1] * m[4] + l[2] * m[5] + l[3] * m[0] + l[4] * m[1] + l[5] * m[2];
}

template <class F>
F klein_form(const Line6<F>& l) {
  return l[0] * l[3] + l[1] * l[4] + l[2] * l[5];
}

/// Antisymmetric 4x4 matrix of a bivector.
template <class F>
std::array<std::array<F, 4>, 4> bivector_matrix(const Line6<F>& l) {
  std::array<std::array<F, 4>, 4> B;
  for (auto& row : B) row.fill(F(0));
  auto set = [&](int i, int j, const F& v) {
    B[i][j] = v;
    B[j][i] = -v;
  };
  set(0, 1, l[0]);
  set(0, 2, l[1]);
  set(0, 3, l[2]);
  set(2, 3, l[3]);
  set(1, 3, -l[4]);
  set(1, 2, l[5]);
  return B;
}

/// Contraction of a bivector by a covector: for a line, the point where it
/// meets the plane (zero when the line lies in the plane).
template <class F>
Pt4<F> contract(const Line6<F>& l, const Pt4<F>& gamma) {
  auto B = bivector_matrix(l);
  Pt4<F> p;
  p.fill(F(0));
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) p[j] = p[j] + gamma[i] * B[i][j];
  return p;
}

template <class F>
Pt4<F> contraction(const Line6<F>& l, const Pt4<F>& gamma) {
  Pt4<F> p = contract(l, gamma);
  if (is_zero_vec(p)) fail(ErrorKind::LineInPlane, "line " + vec_str(l) + " lies in plane " + vec_str(gamma));
  return p;
}

/// The four coordinates p_i B_jk - p_j B_ik + p_k B_ij (i<j<k) of p ^ l;
/// all vanish iff p lies on l.
template <class F>
std::array<F, 4> point_line_trivector(const Pt4<F>& p, const Line6<F>& l) {
  auto B = bivector_matrix(l);
  static constexpr int idx[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  std::array<F, 4> r;
  for (int n = 0; n < 4; ++n) {
    int i = idx[n][0], j = idx[n][1], k = idx[n][2];
    r[n] = p[i] * B[j][k] - p[j] * B[i][k] + p[k] * B[i][j];
  }
  return r;
}

template <class F>
bool point_on_line(const Pt4<F>& p, const Line6<F>& l) {
  return is_zero_vec(point_line_trivector(p, l));
}

template <class F>
bool lines_meet(const Line6<F>& l, const Line6<F>& m) {
  return is_zero(klein_pairing(l, m));
}

template <class F>
Pt4<F> unit4(int k) {
  Pt4<F> e;
  e.fill(F(0));
  e[k] = F(1);
  return e;
}

/// Planes through the line: contractions of the dual bivector by the basis points.
template <class F>
std::vector<Pt4<F>> planes_through(const Line6<F>& l) {
  std::vector<Pt4<F>> out;
  for (int k = 0; k < 4; ++k) {
    Pt4<F> p = contract(dual_swap(l), unit4<F>(k));
    if (!is_zero_vec(p)) out.push_back(p);
  }
  return out;
}

/// Two distinct points spanning the line.
template <class F>
std::array<Pt4<F>, 2> points_on(const Line6<F>& l) {
  std::vector<Pt4<F>> pts;
  for (int k = 0; k < 4 && pts.size() < 2; ++k) {
    Pt4<F> p = contract(l, unit4<F>(k));
    if (is_zero_vec(p)) continue;
    if (!pts.empty() && proportional(pts[0], p)) continue;
    pts.push_back(p);
  }
  if (pts.size() < 2) fail(ErrorKind::ZeroVector, "not a line: " + vec_str(l));
  return {pts[0], pts[1]};
}

/// Intersection point of two distinct meeting lines.
template <class F>
std::optional<Pt4<F>> meet_point(const Line6<F>& l, const Line6<F>& m) {
  if (!lines_meet(l, m) || proportional(l, m)) return std::nullopt;
  for (const auto& plane : planes_through(m)) {
    Pt4<F> p = contract(l, plane);
    if (!is_zero_vec(p)) return p;
  }
  return std::nullopt;
}

/// Basis of the Klein-orthogonal complement of the span of `vectors`.
template <class F>
std::vector<Line6<F>> polar_subspace(const std::vector<Line6<F>>& vectors) {
  Matrix<F> m;
  for (const auto& v : vectors) {
    auto s = dual_swap(v);
    m.emplace_back(s.begin(), s.end());
  }
  std::vector<std::vector<F>> ns;
  if (m.empty()) {
    for (int k = 0; k < 6; ++k) {
      std::vector<F> e(6, F(0));
      e[k] = F(1);
      ns.push_back(e);
    }
  } else {
    ns = nullspace(m);
  }
  std::vector<Line6<F>> out;
  for (auto& v : ns) {
    Line6<F> w;
    std::copy(v.begin(), v.end(), w.begin());
    out.push_back(w);
  }
  return out;
}

/// Point where three independent planes meet.
template <class F>
Pt4<F> point_from_planes(const std::vector<Pt4<F>>& planes) {
  Matrix<F> m;
  for (const auto& p : planes) m.emplace_back(p.begin(), p.end());
  auto ns = nullspace(m, 4);
  if (ns.size() != 1) fail(ErrorKind::DegenerateConfiguration, "planes do not meet in a single point");
  Pt4<F> p;
  std::copy(ns[0].begin(), ns[0].end(), p.begin());
  return p;
}

// ---------------------------------------------------------------------------
// Pencils of P^5 against the Klein quadric

enum class PencilKind { Hyperbolic, Elliptic, Parabolic, Degenerate };

inline std::string_view to_string(PencilKind k) {
  switch (k) {
    case PencilKind::Hyperbolic: return "Hyperbolic";
    case PencilKind::Elliptic: return "Elliptic";
    case PencilKind::Parabolic: return "Parabolic";
    case PencilKind::Degenerate: return "Degenerate";
  }
  return "?";
}

struct PencilClassification {
  PencilKind kind = PencilKind::Degenerate;
  std::array<Line, 2> pencil;        // basis of the pencil
  Rat A{0}, B{0}, C{0};              // restricted Klein form A l^2 + B l m + C m^2
  Rat discriminant{0};
  Rat d{1};                          // extension of the lines; 1 when rational
  std::vector<Line6<Ext>> lines;     // normalized members on the quadric
  std::vector<Line> rational_lines;  // the same lines when they are rational
};

inline PencilClassification pencil_vs_quadric(const Line& v1, const Line& v2) {
  if (proportional(v1, v2)) fail(ErrorKind::ZeroVector, "pencil basis is dependent");
  PencilClassification pc;
  pc.pencil = {v1, v2};
  pc.A = klein_form(v1);
  pc.B = klein_pairing(v1, v2);
  pc.C = klein_form(v2);
  RootClassification rc = quad_root_pair(pc.A, pc.B, pc.C);
  pc.discriminant = rc.discriminant;
  switch (rc.kind) {
    case RootKind::IdenticallyZero: pc.kind = PencilKind::Degenerate; return pc;
    case RootKind::DoubleRoot: pc.kind = PencilKind::Parabolic; break;
    case RootKind::TwoRealRoots: pc.kind = PencilKind::Hyperbolic; break;
    case RootKind::ConjugatePair: pc.kind = PencilKind::Elliptic; break;
  }
  pc.d = rc.kind == RootKind::DoubleRoot ? Rat(1) : rc.d;
  for (const auto& r : rc.roots) {
    Line6<Ext> l;
    for (int i = 0; i < 6; ++i) l[i] = r[0] * Ext(v1[i]) + r[1] * Ext(v2[i]);
    l = normalize_ext(l);
    pc.lines.push_back(l);
    bool rational = true;
    for (const auto& x : l) rational = rational && x.is_rational();
    if (rational) {
      Line q;
      for (int i = 0; i < 6; ++i) q[i] = l[i].a;
      pc.rational_lines.push_back(normalize(q));
    }
  }
  return pc;
}

}  // namespace linecong
