#pragma once

// Special planes of a birational trilinear map: covectors L whose bracket
// <L, Phi> factors into linear forms, assembled into the normal form of the
// map's type. Roots of slice determinants locate the planes; data may live in
// a quadratic extension when the planes are not real.

#include <map>
#include <string>
#include <vector>

#include "linecong/maps.hpp"
#include "linecong/tensor.hpp"

namespace linecong {

using PhiTensors = std::array<std::array<Rat, 8>, 4>;

struct SpecialPlaneData {
  std::array<int, 3> type{};
  std::array<int, 3> perm{};  // canonical factor k is original factor perm[k]
  Rat d{1};                   // extension of the data; 1 when rational
  std::map<std::string, Pt4<Ext>> planes;
  std::map<std::string, Lin<Ext>> factors;  // a0, a1, b0, ... in canonical factors
  std::array<Ext, 3> weights{};             // omega, type (2,2,2)
  std::array<Ext, 4> residual{};            // h(t,u), coefficient of t_j u_k at 2j+k, type (1,2,2)
  bool general = true;                      // independence conditions of the normal form
  std::vector<std::string> violations;

  const Pt4<Ext>& plane(const std::string& name) const {
    auto it = planes.find(name);
    if (it == planes.end()) fail(ErrorKind::WrongType, "no special plane " + name);
    return it->second;
  }
  const Lin<Ext>& factor(const std::string& name) const {
    auto it = factors.find(name);
    if (it == factors.end()) fail(ErrorKind::WrongType, "no linear factor " + name);
    return it->second;
  }
  bool rational() const { return d == 1; }
};

namespace detail {

inline int slice_index(int k, int val, int i, int j) {
  // i, j run over the two factors other than k, in order
  if (k == 0) return tri_index(val, i, j);
  if (k == 1) return tri_index(i, val, j);
  return tri_index(i, j, val);
}

/// 4x4 matrix of L -> <L, Phi> restricted to factor k = v.
inline Matrix<Ext> slice_matrix(const PhiTensors& T, int k, const Lin<Ext>& v) {
  Matrix<Ext> M = zeros<Ext>(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 4; ++l)
        M[i * 2 + j][l] = v[0] * Ext(T[l][slice_index(k, 0, i, j)]) + v[1] * Ext(T[l][slice_index(k, 1, i, j)]);
  return M;
}

/// det of the slice matrix as a binary quartic in factor k.
inline MPoly slice_det(const PhiTensors& T, int k) {
  std::vector<std::vector<MPoly>> M(4, std::vector<MPoly>(4));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 4; ++l)
        M[i * 2 + j][l] = lin_poly(kFactors[k], {T[l][slice_index(k, 0, i, j)], T[l][slice_index(k, 1, i, j)]});
  MultiDeg d{0, 0, 0, 0};
  d[k] = 4;
  return poly_det(M, d);
}

inline std::vector<Pt4<Ext>> slice_kernel(const PhiTensors& T, int k, const Lin<Ext>& v) {
  std::vector<Pt4<Ext>> out;
  for (const auto& n : nullspace(slice_matrix(T, k, v), 4)) {
    Pt4<Ext> p;
    std::copy(n.begin(), n.end(), p.begin());
    out.push_back(normalize_ext(p));
  }
  return out;
}

/// Roots of the factor of multiplicity `mult` in the slice determinant.
inline std::vector<Lin<Ext>> slice_roots(const PhiTensors& T, int k, int mult, int expected_degree) {
  MPoly D = slice_det(T, k);
  if (D.is_zero()) fail(ErrorKind::DegenerateConfiguration, "slice determinant vanishes identically");
  const Block b = kFactors[k];
  const int v0 = kBlockStart[k];
  for (const auto& [f, m] : square_free_factors(D, b)) {
    if (m != mult) continue;
    if (f.degree()[k] != expected_degree) break;
    auto c = [&](int p0) {
      Exponent e{};
      e[v0] = static_cast<std::uint8_t>(p0);
      e[v0 + 1] = static_cast<std::uint8_t>(expected_degree - p0);
      return f.coeff(e);
    };
    if (expected_degree == 1) return {Lin<Ext>{Ext(c(0)), Ext(-c(1))}};
    RootClassification rc = quad_root_pair(c(2), c(1), c(0));
    if (rc.kind == RootKind::DoubleRoot || rc.kind == RootKind::IdenticallyZero) break;
    std::vector<Lin<Ext>> out;
    for (const auto& r : rc.roots) out.push_back({r[0], r[1]});
    return out;
  }
  fail(ErrorKind::DegenerateConfiguration,
       std::string("slice determinant in ") + std::string(kBlockNames[k]) + " does not have the expected root pattern");
}

inline Pt4<Ext> single_kernel(const PhiTensors& T, int k, const Lin<Ext>& v, const char* what) {
  auto ker = slice_kernel(T, k, v);
  if (ker.size() != 1) fail(ErrorKind::DegenerateConfiguration, std::string("kernel for ") + what + " is not a line");
  return ker[0];
}

inline Pt4<Ext> ext_plane(const Plane& p) {
  Pt4<Ext> r;
  for (int i = 0; i < 4; ++i) r[i] = Ext(p[i]);
  return r;
}

inline Lin<Ext> ext_lin(const Lin<Rat>& l) { return {Ext(l[0]), Ext(l[1])}; }

template <std::size_t N>
Matrix<Ext> columns(const std::array<Pt4<Ext>, N>& cols) {
  Matrix<Ext> M = zeros<Ext>(4, N);
  for (std::size_t c = 0; c < N; ++c)
    for (int r = 0; r < 4; ++r) M[r][c] = cols[c][r];
  return M;
}

inline std::size_t rank_of(const std::vector<Pt4<Ext>>& v) {
  Matrix<Ext> M;
  for (const auto& p : v) M.emplace_back(p.begin(), p.end());
  return rank(M);
}

inline Pt4<Ext> scale4(const Pt4<Ext>& p, const Ext& k) {
  Pt4<Ext> r;
  for (int i = 0; i < 4; ++i) r[i] = p[i] * k;
  return r;
}

inline Pt4<Ext> combo(const Ext& x, const Pt4<Ext>& p, const Ext& y, const Pt4<Ext>& q) {
  Pt4<Ext> r;
  for (int i = 0; i < 4; ++i) r[i] = x * p[i] + y * q[i];
  return r;
}

/// Coordinates (x, y) of p in the basis {e, f} of a 2-dimensional span.
inline std::array<Ext, 2> coords2(const Pt4<Ext>& p, const Pt4<Ext>& e, const Pt4<Ext>& f) {
  Matrix<Ext> M = zeros<Ext>(4, 3);
  for (int r = 0; r < 4; ++r) {
    M[r][0] = e[r];
    M[r][1] = f[r];
    M[r][2] = p[r];
  }
  auto ns = nullspace(M);
  if (ns.size() != 1 || is_zero(ns[0][2])) fail(ErrorKind::InconsistentData, "plane outside the expected pencil");
  Ext k = -(ns[0][2].inverse());
  return {ns[0][0] * k, ns[0][1] * k};
}

inline Rat data_extension(const SpecialPlaneData& s) {
  Rat d = 1;
  auto see = [&](const Ext& x) {
    if (!x.is_rational()) d = x.d;
  };
  for (const auto& [n, p] : s.planes)
    for (const auto& x : p) see(x);
  for (const auto& [n, l] : s.factors)
    for (const auto& x : l) see(x);
  for (const auto& x : s.weights) see(x);
  for (const auto& x : s.residual) see(x);
  return d;
}

inline void require(SpecialPlaneData& s, bool ok, const std::string& what) {
  if (!ok) s.violations.push_back(what);
}

}  // namespace detail

/// Bracket <L, Phi> as a tensor over Ext.
inline Tri<Ext> bracket_ext(const Pt4<Ext>& L, const PhiTensors& T) { return bracket<Ext>(L, T); }

/// Independence conditions of the normal form; fills `violations` and `general`.
inline void check_matroid(SpecialPlaneData& s) {
  using detail::rank_of;
  s.violations.clear();
  auto P = [&](const char* n) { return s.plane(n); };
  const auto& t = s.type;
  if (t == std::array<int, 3>{1, 1, 1}) {
    const char* names[6] = {"A0", "A1", "B0", "B1", "C0", "C1"};
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        for (int c = b + 1; c < 6; ++c)
          for (int d = c + 1; d < 6; ++d)
            detail::require(s, rank_of({P(names[a]), P(names[b]), P(names[c]), P(names[d])}) == 4,
                            std::string(names[a]) + "," + names[b] + "," + names[c] + "," + names[d] + " dependent");
  } else if (t == std::array<int, 3>{1, 1, 2}) {
    detail::require(s, rank_of({P("A"), P("B"), P("C0"), P("C1")}) == 4, "A,B,C0,C1 dependent");
  } else if (t == std::array<int, 3>{1, 2, 2}) {
    for (const char* i : {"0", "1"}) {
      const std::string A = std::string("A") + i, B = std::string("B") + i, C = std::string("C") + i;
      detail::require(s, rank_of({P(A.c_str()), P(B.c_str()), P(C.c_str())}) == 2, "E" + std::string(i) + " not of rank 2");
      detail::require(s, rank_of({P(A.c_str()), P(B.c_str())}) == 2, A + "," + B + " dependent");
      detail::require(s, rank_of({P(A.c_str()), P(C.c_str())}) == 2, A + "," + C + " dependent");
      detail::require(s, rank_of({P(B.c_str()), P(C.c_str())}) == 2, B + "," + C + " dependent");
    }
    using Two = std::pair<const char*, const char*>;
    const Two e0[3] = {{"A0", "B0"}, {"A0", "C0"}, {"B0", "C0"}};
    const Two e1[3] = {{"A1", "B1"}, {"A1", "C1"}, {"B1", "C1"}};
    for (const auto& [u0, v0] : e0)
      for (const auto& [u1, v1] : e1)
        detail::require(s, rank_of({P(u0), P(v0), P(u1), P(v1)}) == 4,
                        std::string(u0) + "," + v0 + "," + u1 + "," + v1 + " dependent");
  } else {
    detail::require(s, rank_of({P("A"), P("B"), P("C"), P("D")}) == 4, "A,B,C,D dependent");
    for (int k = 0; k < 3; ++k)
      detail::require(s, !is_zero(s.weights[k]), "omega" + std::to_string(k + 1) + " vanishes");
  }
  s.general = s.violations.empty();
}

/// The bracket each special plane must produce in the normal form of its type.
inline std::map<std::string, Tri<Ext>> expected_brackets(const SpecialPlaneData& s) {
  std::map<std::string, Tri<Ext>> out;
  auto f = [&](const char* n) { return s.factor(n); };
  const auto& t = s.type;
  if (t == std::array<int, 3>{1, 1, 2}) {
    out["A"] = outer(f("a1"), f("b0"), f("c1"));
    out["B"] = outer(f("a0"), f("b1"), f("c1"));
    out["C0"] = outer(f("a0"), f("b0"), f("c1"));
    out["C1"] = outer(f("a0"), f("b0"), f("c0")) + scaled(outer(f("a1"), f("b1"), f("c0")), Ext(-1));
  } else if (t == std::array<int, 3>{1, 2, 2}) {
    Tri<Ext> h0, h1;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          h0[tri_index(i, j, k)] = f("a0")[i] * s.residual[j * 2 + k];
          h1[tri_index(i, j, k)] = f("a1")[i] * s.residual[j * 2 + k];
        }
    out["A0"] = h0;
    out["A1"] = h1;
    out["B0"] = outer(f("a0"), f("b0"), f("c2"));
    out["B1"] = outer(f("a1"), f("b1"), f("c2"));
    out["C0"] = outer(f("a0"), f("b2"), f("c0"));
    out["C1"] = outer(f("a1"), f("b2"), f("c1"));
  } else if (t == std::array<int, 3>{2, 2, 2}) {
    out["A"] = outer(f("a0"), f("b1"), f("c1"));
    out["B"] = outer(f("a1"), f("b0"), f("c1"));
    out["C"] = outer(f("a1"), f("b1"), f("c0"));
    out["D"] = scaled(outer(f("a1"), f("b0"), f("c0")), s.weights[0]) +
               scaled(outer(f("a0"), f("b1"), f("c0")), s.weights[1]) +
               scaled(outer(f("a0"), f("b0"), f("c1")), s.weights[2]);
  }
  return out;
}

namespace detail {

inline SpecialPlaneData planes_111(const TypeInfo& info) {
  SpecialPlaneData s;
  const char* names[3] = {"A", "B", "C"};
  for (int k = 0; k < 3; ++k) {
    const MovingPlane& sy = info.unit_syzygies[info.perm[k]].at(0);
    const int orig = info.perm[k];
    for (int i = 0; i < 2; ++i) {
      Exponent e{};
      e[kBlockStart[orig] + i] = 1;
      s.planes[std::string(names[k]) + std::to_string(i)] = ext_plane(sy.plane_of(e));
    }
  }
  return s;
}

inline SpecialPlaneData planes_112(const PhiTensors& T, const TypeInfo& info) {
  SpecialPlaneData s;
  std::array<std::array<Pt4<Ext>, 2>, 2> pen;
  for (int k = 0; k < 2; ++k) {
    const MovingPlane& sy = info.unit_syzygies[info.perm[k]].at(0);
    for (int i = 0; i < 2; ++i) {
      Exponent e{};
      e[kBlockStart[info.perm[k]] + i] = 1;
      pen[k][i] = ext_plane(sy.plane_of(e));
    }
  }
  // C0 spans the intersection of the two pencils
  auto ns = nullspace(columns<4>({pen[0][0], pen[0][1], pen[1][0], pen[1][1]}));
  if (ns.size() != 1) fail(ErrorKind::DegenerateConfiguration, "the s- and t-pencils do not meet in one plane");
  Pt4<Ext> C0 = normalize_ext(combo(ns[0][0], pen[0][0], ns[0][1], pen[0][1]));
  // a0 (b0) vanishes where the s-pencil (t-pencil) passes through C0
  auto root_form = [&](int k) {
    auto xy = coords2(C0, pen[k][0], pen[k][1]);
    return Lin<Ext>{xy[1], -xy[0]};
  };
  Lin<Ext> a0 = root_form(0), b0 = root_form(1);
  Lin<Ext> c1 = tri_complete(bracket_ext(C0, T), 2, a0, b0);
  // C1 is the kernel at the simple root of the u-slice determinant
  Pt4<Ext> C1 = single_kernel(T, 2, slice_roots(T, 2, 1, 1)[0], "C1");
  Tri<Ext> t1 = bracket_ext(C1, T);
  if (rank(tri_flatten(t1, 2)) != 1) fail(ErrorKind::DegenerateConfiguration, "<C1> does not factor in u");
  Lin<Ext> cu;
  for (int m = 0; m < 4 && is_zero(cu[0]) && is_zero(cu[1]); ++m) cu = {t1[2 * m], t1[2 * m + 1]};
  int pc = is_zero(cu[0]) ? 1 : 0;
  // <C1> = Q (x) cu with Q bilinear in s, t; Q - mu a0 b0 has rank one
  Ext Q[2][2], R[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Q[i][j] = t1[tri_index(i, j, pc)] / cu[pc];
      R[i][j] = a0[i] * b0[j];
    }
  Ext cross = Q[0][0] * R[1][1] + Q[1][1] * R[0][0] - Q[0][1] * R[1][0] - Q[1][0] * R[0][1];
  if (is_zero(cross)) fail(ErrorKind::DegenerateConfiguration, "a0 b0 is not a component of <C1>");
  Ext mu = (Q[0][0] * Q[1][1] - Q[0][1] * Q[1][0]) / cross;
  if (is_zero(mu)) fail(ErrorKind::DegenerateConfiguration, "<C1> has rank one in s, t");
  Ext N[2][2];
  int p = -1, q = -1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      N[i][j] = Q[i][j] - mu * R[i][j];
      if (p < 0 && !is_zero(N[i][j])) p = i, q = j;
    }
  if (p < 0) fail(ErrorKind::DegenerateConfiguration, "<C1> is a multiple of a0 b0 c0");
  // a1 b1 = -N / mu
  Lin<Ext> a1{N[0][q], N[1][q]};
  Lin<Ext> b1{-(N[p][0] / (mu * N[p][q])), -(N[p][1] / (mu * N[p][q]))};
  C1 = scale4(C1, mu.inverse());
  Lin<Ext> c0 = cu;
  // A (B) is the member of the s-pencil (t-pencil) with the prescribed bracket
  auto member = [&](int k, const Tri<Ext>& target) {
    Tri<Ext> u = bracket_ext(pen[k][0], T), v = bracket_ext(pen[k][1], T);
    Matrix<Ext> M = zeros<Ext>(8, 3);
    for (int m = 0; m < 8; ++m) {
      M[m][0] = u[m];
      M[m][1] = v[m];
      M[m][2] = -target[m];
    }
    auto sol = nullspace(M);
    if (sol.size() != 1 || is_zero(sol[0][2]))
      fail(ErrorKind::DegenerateConfiguration, "no pencil member with the prescribed bracket");
    Ext k2 = sol[0][2].inverse();
    return combo(sol[0][0] * k2, pen[k][0], sol[0][1] * k2, pen[k][1]);
  };
  s.planes["A"] = member(0, outer(a1, b0, c1));
  s.planes["B"] = member(1, outer(a0, b1, c1));
  s.planes["C0"] = C0;
  s.planes["C1"] = C1;
  s.factors = {{"a0", a0}, {"a1", a1}, {"b0", b0}, {"b1", b1}, {"c0", c0}, {"c1", c1}};
  return s;
}

inline SpecialPlaneData planes_122(const PhiTensors& T, const TypeInfo& info) {
  SpecialPlaneData s;
  std::array<Pt4<Ext>, 2> B, C;
  {
    auto rt = slice_roots(T, 1, 1, 2);
    for (int i = 0; i < 2; ++i) B[i] = single_kernel(T, 1, rt[i], "B");
    auto ru = slice_roots(T, 2, 1, 2);
    for (int i = 0; i < 2; ++i) C[i] = single_kernel(T, 2, ru[i], "C");
  }
  // span of A0, A1: the s-syzygy pencil
  const MovingPlane& alpha = info.unit_syzygies[info.perm[0]].at(0);
  std::array<Pt4<Ext>, 2> P;
  for (int i = 0; i < 2; ++i) {
    Exponent e{};
    e[kBlockStart[info.perm[0]] + i] = 1;
    P[i] = ext_plane(alpha.plane_of(e));
  }
  // pair B_i with the C_j completing a dependent triple with the pencil
  std::array<Pt4<Ext>, 2> Cp;
  for (int i = 0; i < 2; ++i) {
    int found = -1;
    for (int j = 0; j < 2; ++j)
      if (is_zero(det(columns<4>({B[i], C[j], P[0], P[1]})))) found = found < 0 ? j : 2;
    if (found < 0 || found > 1) fail(ErrorKind::DegenerateConfiguration, "cannot pair the B and C planes");
    Cp[i] = C[found];
  }
  if (Cp[0] == Cp[1]) fail(ErrorKind::DegenerateConfiguration, "both B planes pair with the same C plane");
  C = Cp;
  std::array<Pt4<Ext>, 2> A;
  for (int i = 0; i < 2; ++i) {
    auto ns = nullspace(columns<4>({B[i], C[i], P[0], P[1]}));
    if (ns.size() != 1) fail(ErrorKind::DegenerateConfiguration, "A plane is not determined");
    A[i] = normalize_ext(combo(ns[0][0], B[i], ns[0][1], C[i]));
  }
  // consistent linear factors
  TriSplit<Ext> sb0 = tri_split(bracket_ext(B[0], T));
  Lin<Ext> a0 = sb0.a, b0 = sb0.b, c2 = sb0.c;
  Tri<Ext> tc0 = bracket_ext(C[0], T);
  Lin<Ext> b2 = tri_split(tc0).b;
  Lin<Ext> c0 = tri_complete(tc0, 2, a0, b2);
  Tri<Ext> tb1 = bracket_ext(B[1], T);
  Lin<Ext> a1 = tri_split(tb1).a;
  Lin<Ext> b1 = tri_complete(tb1, 1, a1, c2);
  Lin<Ext> c1 = tri_complete(bracket_ext(C[1], T), 2, a1, b2);
  // h from <A0> = a0 h, then A1 rescaled so that <A1> = a1 h
  auto residual = [&](const Tri<Ext>& t, const Lin<Ext>& a) {
    int p = is_zero(a[0]) ? 1 : 0;
    std::array<Ext, 4> h;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) h[j * 2 + k] = t[tri_index(p, j, k)] / a[p];
    return h;
  };
  std::array<Ext, 4> h = residual(bracket_ext(A[0], T), a0), h1 = residual(bracket_ext(A[1], T), a1);
  int q = 0;
  while (q < 4 && is_zero(h[q])) ++q;
  if (q == 4 || is_zero(h1[q])) fail(ErrorKind::DegenerateConfiguration, "residual form vanishes");
  A[1] = scale4(A[1], h[q] / h1[q]);
  s.planes = {{"A0", A[0]}, {"A1", A[1]}, {"B0", B[0]}, {"B1", B[1]}, {"C0", C[0]}, {"C1", C[1]}};
  s.factors = {{"a0", a0}, {"a1", a1}, {"b0", b0}, {"b1", b1}, {"b2", b2},
               {"c0", c0}, {"c1", c1}, {"c2", c2}};
  s.residual = h;
  return s;
}

inline SpecialPlaneData planes_222(const PhiTensors& T) {
  SpecialPlaneData s;
  std::array<Pt4<Ext>, 3> X;
  for (int k = 0; k < 3; ++k) X[k] = single_kernel(T, k, slice_roots(T, k, 1, 1)[0], "A, B, C");
  const Pt4<Ext>&A = X[0], &B = X[1], &C = X[2];
  TriSplit<Ext> sa = tri_split(bracket_ext(A, T));
  Lin<Ext> a0 = sa.a, b1 = sa.b, c1 = sa.c;
  Tri<Ext> tb = bracket_ext(B, T);
  Lin<Ext> a1 = tri_split(tb).a;
  Lin<Ext> b0 = tri_complete(tb, 1, a1, c1);
  Lin<Ext> c0 = tri_complete(bracket_ext(C, T), 2, a1, b1);
  Matrix<Ext> ma{{a0[0], a0[1]}, {a1[0], a1[1]}}, mb{{b0[0], b0[1]}, {b1[0], b1[1]}},
      mc{{c0[0], c0[1]}, {c1[0], c1[1]}};
  // D: the bracket has no a0 b1 c1, a1 b0 c1, a1 b1 c0 components
  std::array<Tri<Ext>, 4> coords;
  for (int l = 0; l < 4; ++l) coords[l] = change_basis(tri_cast<Ext>(T[l]), ma, mb, mc);
  Matrix<Ext> M = zeros<Ext>(3, 4);
  const int zero_at[3] = {tri_index(0, 1, 1), tri_index(1, 0, 1), tri_index(1, 1, 0)};
  for (int r = 0; r < 3; ++r)
    for (int l = 0; l < 4; ++l) M[r][l] = coords[l][zero_at[r]];
  auto ns = nullspace(M);
  if (ns.size() != 1) fail(ErrorKind::DegenerateConfiguration, "the plane D is not determined");
  Pt4<Ext> D{ns[0][0], ns[0][1], ns[0][2], ns[0][3]};
  D = normalize_ext(D);
  Tri<Ext> cd = change_basis(bracket_ext(D, T), ma, mb, mc);
  if (!is_zero(cd[tri_index(0, 0, 0)]) || !is_zero(cd[tri_index(1, 1, 1)]))
    fail(ErrorKind::DegenerateConfiguration, "bracket of D has a0 b0 c0 or a1 b1 c1 components");
  s.weights = {cd[tri_index(1, 0, 0)], cd[tri_index(0, 1, 0)], cd[tri_index(0, 0, 1)]};
  s.planes = {{"A", A}, {"B", B}, {"C", C}, {"D", D}};
  s.factors = {{"a0", a0}, {"a1", a1}, {"b0", b0}, {"b1", b1}, {"c0", c0}, {"c1", c1}};
  return s;
}

}  // namespace detail

/// Special-plane data in canonical factor order (type non-decreasing).
inline SpecialPlaneData special_planes(const TrilinearMap& m, const TypeInfo& info) {
  const TrilinearMap canon = permute_factors(m, info.perm);
  const PhiTensors T = canon.tensors();
  SpecialPlaneData s;
  try {
    if (info.type == std::array<int, 3>{1, 1, 1}) {
      s = detail::planes_111(info);
    } else if (info.type == std::array<int, 3>{1, 1, 2}) {
      s = detail::planes_112(T, info);
    } else if (info.type == std::array<int, 3>{1, 2, 2}) {
      s = detail::planes_122(T, info);
    } else {
      s = detail::planes_222(T);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DegenerateConfiguration) throw;
    fail(ErrorKind::DegenerateConfiguration, e.what());
  }
  s.type = info.type;
  s.perm = info.perm;
  s.d = detail::data_extension(s);
  for (const auto& [name, expected] : expected_brackets(s))
    if (bracket_ext(s.plane(name), T) != expected)
      fail(ErrorKind::DegenerateConfiguration, "bracket of " + name + " does not match the normal form");
  check_matroid(s);
  if (!s.general && s.type != std::array<int, 3>{1, 1, 1}) {
    std::string v;
    for (const auto& x : s.violations) v += (v.empty() ? "" : "; ") + x;
    fail(ErrorKind::DegenerateConfiguration, v);
  }
  return s;
}

inline SpecialPlaneData special_planes(const TrilinearMap& m) {
  TypeInfo info;
  try {
    info = detect_type(m);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotBirational) throw;
    fail(ErrorKind::NoSpecialPlanes, e.what());
  }
  return special_planes(m, info);
}

// ---------------------------------------------------------------------------
// Focal data read off the special planes

template <class F>
Line6<F> normalized_line(const Line6<F>& l) {
  if constexpr (std::is_same_v<F, Ext>) {
    return normalize_ext(l);
  } else {
    return normalize(l);
  }
}

/// Lines of the normal form: (1,1,1) a, b, c; (1,1,2) a = B^C0, b = A^C0;
/// (1,2,2) a, b, c, x, y; (2,2,2) x = B^C, y = A^C, z = A^B.
inline std::map<std::string, Line6<Ext>> covector_lines(const SpecialPlaneData& s) {
  std::map<std::string, Line6<Ext>> out;
  auto L = [&](const char* p, const char* q) { return normalize_ext(line_from_planes(s.plane(p), s.plane(q))); };
  if (s.type == std::array<int, 3>{1, 1, 1}) {
    out["a"] = L("A0", "A1");
    out["b"] = L("B0", "B1");
    out["c"] = L("C0", "C1");
  } else if (s.type == std::array<int, 3>{1, 1, 2}) {
    out["a"] = L("B", "C0");
    out["b"] = L("A", "C0");
  } else if (s.type == std::array<int, 3>{1, 2, 2}) {
    out["a"] = L("A0", "A1");
    out["b"] = L("B0", "B1");
    out["c"] = L("C0", "C1");
    out["x"] = L("B0", "C0");
    out["y"] = L("B1", "C1");
  } else {
    out["x"] = L("B", "C");
    out["y"] = L("A", "C");
    out["z"] = L("A", "B");
  }
  return out;
}

/// O = A^B^C0 for (1,1,2), P = A^B^C for (2,2,2).
inline Pt4<Ext> covector_point(const SpecialPlaneData& s) {
  if (s.type == std::array<int, 3>{1, 1, 2})
    return normalize_ext(point_from_planes<Ext>({s.plane("A"), s.plane("B"), s.plane("C0")}));
  if (s.type == std::array<int, 3>{2, 2, 2})
    return normalize_ext(point_from_planes<Ext>({s.plane("A"), s.plane("B"), s.plane("C")}));
  fail(ErrorKind::WrongType, "no distinguished point for type " + type_str(s.type));
}

inline bool ext_line_rational(const Line6<Ext>& l) {
  for (const auto& x : l)
    if (!x.is_rational()) return false;
  return true;
}

inline Line rational_part(const Line6<Ext>& l) {
  Line r;
  for (int i = 0; i < 6; ++i) r[i] = l[i].a;
  return r;
}

}  // namespace linecong
