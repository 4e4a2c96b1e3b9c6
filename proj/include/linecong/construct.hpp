#pragma once

// Fixture maps: the classical examples, normal forms built from prescribed
// special planes and linear forms, and random real conjugations.

#include <random>

#include "linecong/maps.hpp"
#include "linecong/tensor.hpp"

namespace linecong {

inline TrilinearMap tensor_map() {
  return parse_map({"s0*t0*u0", "s1*t0*u0", "s0*t1*u0", "s0*t0*u1"});
}

inline TrilinearMap example_map() {
  return parse_map({"s0*t0*u1 + s1*t0*u1 + s0*t1*u1", "s1*t0*u1 + s0*t1*u1 + 2*s1*t1*u1",
                    "-s0*t1*u0 - s1*t1*u0 + s0*t0*u1 + s1*t0*u1", "-s1*t1*u0 + s1*t0*u1"});
}

/// Generically two-to-one: (s,t,u) and a second point share each image.
inline TrilinearMap two_to_one_map() { return parse_map({"s0*t0*u0", "s1*t1*u0", "s0*t1*u1", "s1*t0*u1"}); }

// ---------------------------------------------------------------------------
// Random data

inline Rat rand_small(std::mt19937_64& rng, int range) {
  return Rat(std::uniform_int_distribution<int>(-range, range)(rng));
}

inline Plane rand_plane(std::mt19937_64& rng, int range = 5) {
  Plane p;
  do {
    for (auto& x : p) x = rand_small(rng, range);
  } while (is_zero_vec(p));
  return p;
}

inline Lin<Rat> rand_lin(std::mt19937_64& rng, int range = 5) {
  Lin<Rat> l;
  do {
    for (auto& x : l) x = rand_small(rng, range);
  } while (is_zero_vec(l));
  return l;
}

/// Two independent linear forms.
inline std::array<Lin<Rat>, 2> rand_lin_pair(std::mt19937_64& rng) {
  while (true) {
    Lin<Rat> a = rand_lin(rng), b = rand_lin(rng);
    if (!lin_proportional(a, b)) return {a, b};
  }
}

inline Matrix<Rat> rows_of(const std::vector<Plane>& planes) {
  Matrix<Rat> m;
  for (const auto& p : planes) m.emplace_back(p.begin(), p.end());
  return m;
}

inline bool independent(const std::vector<Plane>& planes) { return rank(rows_of(planes)) == planes.size(); }

/// f = M^{-1} v for the rows M of the given planes and target tensors v, so
/// that <plane_j, f> = v_j.
inline TrilinearMap map_from_brackets(const std::vector<Pt4<Ext>>& planes, const std::array<Tri<Ext>, 4>& v) {
  Matrix<Ext> M;
  for (const auto& p : planes) M.emplace_back(p.begin(), p.end());
  auto inv = inverse(M);
  if (!inv) fail(ErrorKind::DegenerateConfiguration, "dependent planes");
  std::array<MPoly, 4> f;
  for (int i = 0; i < 4; ++i) {
    std::array<Rat, 8> T;
    for (int m = 0; m < 8; ++m) {
      Ext acc(0);
      for (int j = 0; j < 4; ++j) acc = acc + (*inv)[i][j] * v[j][m];
      if (!acc.is_rational()) fail(ErrorKind::InconsistentData, "bracket data is not real");
      T[m] = acc.a;
    }
    f[i] = trilinear_from_tensor(T);
  }
  return make_map(f);
}

template <class F>
Pt4<Ext> to_ext(const Pt4<F>& p) {
  Pt4<Ext> r;
  for (int i = 0; i < 4; ++i) r[i] = Ext(p[i]);
  return r;
}

template <class F>
Lin<Ext> to_ext(const Lin<F>& l) {
  return {Ext(l[0]), Ext(l[1])};
}

// ---------------------------------------------------------------------------
// Type (1,1,1): the point where three moving planes meet

/// f_i = signed 3x3 minors of the 3x4 matrix with rows sigma(s), tau(t), upsilon(u).
inline TrilinearMap map_from_pencils(const std::array<Plane, 2>& A, const std::array<Plane, 2>& B,
                                     const std::array<Plane, 2>& C) {
  auto pencil = [](const std::array<Plane, 2>& P, Block b) {
    std::array<MPoly, 4> r;
    for (int i = 0; i < 4; ++i) {
      MPoly p = MPoly::var(b, 0) * P[0][i] + MPoly::var(b, 1) * P[1][i];
      MultiDeg d{0, 0, 0, 0};
      d[static_cast<int>(b)] = 1;
      r[i] = p.is_zero() ? MPoly::zero(d) : p;
    }
    return r;
  };
  std::array<std::array<MPoly, 4>, 3> R{pencil(A, Block::s), pencil(B, Block::t), pencil(C, Block::u)};
  std::array<MPoly, 4> f;
  for (int i = 0; i < 4; ++i) {
    std::vector<int> cols;
    for (int j = 0; j < 4; ++j)
      if (j != i) cols.push_back(j);
    std::vector<std::vector<MPoly>> m(3, std::vector<MPoly>(3));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m[r][c] = R[r][cols[c]];
    MPoly d = poly_det(m, kTrilinear);
    f[i] = i % 2 ? -d : d;
  }
  return make_map(f);
}

/// Random type (1,1,1) map of the given class (1..4).
inline TrilinearMap random_111(std::mt19937_64& rng, int cls) {
  while (true) {
    Plane A0 = rand_plane(rng), A1 = rand_plane(rng), B0 = rand_plane(rng), B1 = rand_plane(rng),
          C0 = rand_plane(rng), C1 = rand_plane(rng);
    auto mix = [&](const Plane& p, const Plane& q) {
      Plane r;
      Rat x = rand_small(rng, 3), y = rand_small(rng, 3);
      for (int i = 0; i < 4; ++i) r[i] = x * p[i] + y * q[i];
      return r;
    };
    if (cls == 2) {
      // a = A0^A1 meets b = B0^B1
      Plane m = mix(A0, A1);
      Rat k = rand_small(rng, 3);
      for (int i = 0; i < 4; ++i) B1[i] = m[i] + k * B0[i];
    } else if (cls == 3) {
      // c meets a and b
      C0 = mix(A0, A1);
      C1 = mix(B0, B1);
    } else if (cls == 4) {
      // a, b, c lie in one plane n: each pencil contains n
      Plane n = rand_plane(rng);
      A0 = n;
      B0 = n;
      C0 = n;
    }
    try {
      TrilinearMap m = map_from_pencils({A0, A1}, {B0, B1}, {C0, C1});
      check_dominant(m);
      return m;
    } catch (const Error&) {
    }
  }
}

// ---------------------------------------------------------------------------
// Type (1,1,2): <A> = a1 b0 c1, <B> = a0 b1 c1, <C0> = a0 b0 c1, <C1> = (a0 b0 - a1 b1) c0

inline TrilinearMap map_112(const std::array<Plane, 4>& planes, const std::array<Lin<Rat>, 2>& a,
                            const std::array<Lin<Rat>, 2>& b, const std::array<Lin<Rat>, 2>& c) {
  auto o = [](const Lin<Rat>& x, const Lin<Rat>& y, const Lin<Rat>& z) { return tri_cast<Ext>(outer(x, y, z)); };
  Tri<Ext> last = o(a[0], b[0], c[0]) + scaled(o(a[1], b[1], c[0]), Ext(-1));
  std::array<Tri<Ext>, 4> v{o(a[1], b[0], c[1]), o(a[0], b[1], c[1]), o(a[0], b[0], c[1]), last};
  return map_from_brackets({to_ext(planes[0]), to_ext(planes[1]), to_ext(planes[2]), to_ext(planes[3])}, v);
}

inline TrilinearMap random_112(std::mt19937_64& rng) {
  while (true) {
    std::array<Plane, 4> P{rand_plane(rng), rand_plane(rng), rand_plane(rng), rand_plane(rng)};
    if (!independent({P[0], P[1], P[2], P[3]})) continue;
    try {
      TrilinearMap m = map_112(P, rand_lin_pair(rng), rand_lin_pair(rng), rand_lin_pair(rng));
      check_dominant(m);
      return m;
    } catch (const Error&) {
    }
  }
}

// ---------------------------------------------------------------------------
// Type (1,2,2): <B_i> = a_i b_i c2, <C_i> = a_i b2 c_i

struct Data122 {
  std::array<Pt4<Ext>, 4> planes;  // B0, C0, B1, C1
  std::array<Lin<Ext>, 2> a, b, c;
  Lin<Ext> b2, c2;
};

inline TrilinearMap map_122(const Data122& d) {
  auto o = [](const Lin<Ext>& x, const Lin<Ext>& y, const Lin<Ext>& z) { return outer(x, y, z); };
  std::array<Tri<Ext>, 4> v{o(d.a[0], d.b[0], d.c2), o(d.a[0], d.b2, d.c[0]), o(d.a[1], d.b[1], d.c2),
                            o(d.a[1], d.b2, d.c[1])};
  return map_from_brackets({d.planes[0], d.planes[1], d.planes[2], d.planes[3]}, v);
}

/// Random type (1,2,2) map; `conjugate_xy` selects focal lines x, y of S that
/// are complex conjugate (classes b) instead of real (classes a).
inline TrilinearMap random_122(std::mt19937_64& rng, bool conjugate_xy) {
  while (true) {
    Data122 d;
    if (!conjugate_xy) {
      for (auto& p : d.planes) p = to_ext(rand_plane(rng));
      auto a = rand_lin_pair(rng), b = rand_lin_pair(rng), c = rand_lin_pair(rng);
      d.a = {to_ext(a[0]), to_ext(a[1])};
      d.b = {to_ext(b[0]), to_ext(b[1])};
      d.c = {to_ext(c[0]), to_ext(c[1])};
      d.b2 = to_ext(rand_lin(rng));
      d.c2 = to_ext(rand_lin(rng));
      bool special = false;
      for (int i = 0; i < 2; ++i)
        special = special || lin_proportional(d.b2, d.b[i]) || lin_proportional(d.c2, d.c[i]);
      if (special) continue;
    } else {
      const Rat m1(-1);
      auto cplx = [&](int range) { return Ext(rand_small(rng, range), rand_small(rng, range), m1); };
      auto cplane = [&] {
        Pt4<Ext> p;
        for (auto& x : p) x = cplx(5);
        return p;
      };
      auto conj4 = [](const Pt4<Ext>& p) {
        Pt4<Ext> r;
        for (int i = 0; i < 4; ++i) r[i] = p[i].conj();
        return r;
      };
      auto conj2 = [](const Lin<Ext>& l) { return Lin<Ext>{l[0].conj(), l[1].conj()}; };
      Pt4<Ext> B0 = cplane(), C0 = cplane();
      d.planes = {B0, C0, conj4(B0), conj4(C0)};
      Lin<Ext> a0{cplx(4), cplx(4)}, b0{cplx(4), cplx(4)}, c0{cplx(4), cplx(4)};
      d.a = {a0, conj2(a0)};
      d.b = {b0, conj2(b0)};
      d.c = {c0, conj2(c0)};
      Ext lam = cplx(3), mu = cplx(3);
      // b2 = lam b0 - lam' b1 and c2 = mu' c1 - mu c0 with lam' = -conj(lam), mu' = -conj(mu)
      for (int k = 0; k < 2; ++k) {
        d.b2[k] = lam * d.b[0][k] + lam.conj() * d.b[1][k];
        d.c2[k] = -(mu.conj() * d.c[1][k]) - mu * d.c[0][k];
      }
    }
    try {
      Matrix<Ext> M;
      for (const auto& p : d.planes) M.emplace_back(p.begin(), p.end());
      if (rank(M) < 4) continue;
      TrilinearMap m = map_122(d);
      check_dominant(m);
      return m;
    } catch (const Error&) {
    }
  }
}

// ---------------------------------------------------------------------------
// Type (2,2,2): <A> = a0 b1 c1, <B> = a1 b0 c1, <C> = a1 b1 c0,
// <D> = w1 a1 b0 c0 + w2 a0 b1 c0 + w3 a0 b0 c1

inline TrilinearMap map_222(const std::array<Plane, 4>& planes, const std::array<Lin<Rat>, 2>& a,
                            const std::array<Lin<Rat>, 2>& b, const std::array<Lin<Rat>, 2>& c,
                            const std::array<Rat, 3>& w) {
  auto o = [](const Lin<Rat>& x, const Lin<Rat>& y, const Lin<Rat>& z) { return tri_cast<Ext>(outer(x, y, z)); };
  Tri<Ext> D = scaled(o(a[1], b[0], c[0]), Ext(w[0])) + scaled(o(a[0], b[1], c[0]), Ext(w[1])) +
               scaled(o(a[0], b[0], c[1]), Ext(w[2]));
  std::array<Tri<Ext>, 4> v{o(a[0], b[1], c[1]), o(a[1], b[0], c[1]), o(a[1], b[1], c[0]), D};
  return map_from_brackets({to_ext(planes[0]), to_ext(planes[1]), to_ext(planes[2]), to_ext(planes[3])}, v);
}

inline TrilinearMap random_222(std::mt19937_64& rng) {
  while (true) {
    std::array<Plane, 4> P{rand_plane(rng), rand_plane(rng), rand_plane(rng), rand_plane(rng)};
    if (!independent({P[0], P[1], P[2], P[3]})) continue;
    std::array<Rat, 3> w{rand_small(rng, 4), rand_small(rng, 4), rand_small(rng, 4)};
    if (is_zero(w[0]) || is_zero(w[1]) || is_zero(w[2])) continue;
    try {
      TrilinearMap m = map_222(P, rand_lin_pair(rng), rand_lin_pair(rng), rand_lin_pair(rng), w);
      check_dominant(m);
      return m;
    } catch (const Error&) {
    }
  }
}

// ---------------------------------------------------------------------------
// Real conjugations

struct Conjugation {
  Matrix<Rat> space;                 // acts on (f0..f3)
  std::array<Matrix<Rat>, 3> factor;  // unimodular substitutions of s, t, u
};

inline Conjugation random_conjugation(std::mt19937_64& rng) {
  Conjugation c;
  do {
    c.space = zeros<Rat>(4, 4);
    for (auto& row : c.space)
      for (auto& x : row) x = rand_small(rng, 3);
  } while (is_zero(det(c.space)));
  for (auto& m : c.factor) {
    // det 1 integer matrices as products of elementary shears
    m = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    for (int k = 0; k < 3; ++k) {
      Rat x = rand_small(rng, 2);
      Matrix<Rat> e = k % 2 ? Matrix<Rat>{{1, x}, {0, 1}} : Matrix<Rat>{{1, 0}, {x, 1}};
      Matrix<Rat> r = zeros<Rat>(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = m[i][0] * e[0][j] + m[i][1] * e[1][j];
      m = r;
    }
  }
  return c;
}

inline TrilinearMap conjugate(const TrilinearMap& m, const Conjugation& c) {
  std::array<MPoly, 4> f;
  for (int i = 0; i < 4; ++i) {
    f[i] = MPoly::zero(kTrilinear);
    for (int j = 0; j < 4; ++j)
      if (!is_zero(c.space[i][j])) f[i] += m.f[j] * c.space[i][j];
    for (int k = 0; k < 3; ++k) f[i] = linear_substitute(f[i], kFactors[k], c.factor[k]);
  }
  return make_map(f);
}

}  // namespace linecong
