#pragma once

// Trilinear maps (P^1)^3 -> P^3: evaluation, moving planes, type detection,
// inverse extraction, sampling verification and a brute-force fiber oracle.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "linecong/binary.hpp"
#include "linecong/linalg.hpp"
#include "linecong/mpoly.hpp"
#include "linecong/pluecker.hpp"

namespace linecong {

using Param = std::array<ProjVec, 3>;
inline constexpr std::array<Block, 3> kFactors{Block::s, Block::t, Block::u};
inline constexpr MultiDeg kTrilinear{1, 1, 1, 0};

struct TrilinearMap {
  std::array<MPoly, 4> f;

  std::array<std::array<Rat, 8>, 4> tensors() const {
    std::array<std::array<Rat, 8>, 4> T;
    for (int i = 0; i < 4; ++i) {
      if (f[i].is_zero()) {
        T[i].fill(Rat(0));
      } else {
        T[i] = trilinear_tensor(f[i]);
      }
    }
    return T;
  }
};

/// Validates the multidegree of each component; zero components are allowed
/// here and rejected later as non-dominant.
inline TrilinearMap make_map(std::array<MPoly, 4> f) {
  bool all_zero = true;
  for (int i = 0; i < 4; ++i) {
    if (f[i].is_zero()) {
      f[i] = MPoly::zero(kTrilinear);
      continue;
    }
    all_zero = false;
    if (f[i].degree() != kTrilinear)
      fail(ErrorKind::NotHomogeneous, "f" + std::to_string(i) + " = " + f[i].str() +
                                          " is not of multidegree (1,1,1) in (s,t,u)");
  }
  if (all_zero) fail(ErrorKind::AllZero, "all four components are zero");
  return TrilinearMap{std::move(f)};
}

inline TrilinearMap parse_map(const std::array<std::string, 4>& text) {
  std::array<MPoly, 4> f;
  for (int i = 0; i < 4; ++i) f[i] = parse_poly(text[i], Signature::params());
  return make_map(std::move(f));
}

inline Assignment assignment(const Param& p, ProjVec x = {}) { return Assignment(p[0], p[1], p[2], std::move(x)); }

/// Image point without the base-point check.
inline Pt eval_raw(const TrilinearMap& m, const Param& p) {
  auto vals = flat_values(assignment(p));
  Pt x;
  for (int i = 0; i < 4; ++i) x[i] = eval<Rat>(m.f[i], vals);
  return x;
}

inline Pt eval_map(const TrilinearMap& m, const Param& p) {
  for (const auto& v : p)
    if (v.size() != 2 || is_zero_vec(v)) fail(ErrorKind::ZeroVector, "parameter factors must be nonzero pairs");
  Pt x = eval_raw(m, p);
  if (is_zero_vec(x))
    fail(ErrorKind::BasePoint, "base point " + vec_str(p[0]) + " x " + vec_str(p[1]) + " x " + vec_str(p[2]));
  return x;
}

/// Relabels factors: factor k of the result is factor perm[k] of m.
inline MPoly permute_blocks(const MPoly& p, const std::array<int, 3>& perm) {
  auto images = identity_images();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 2; ++i) images[kBlockStart[perm[k]] + i] = MPoly::var(kFactors[k], i);
  MPoly r = compose(p, images);
  if (r.is_zero()) {
    MultiDeg d = p.degree();
    for (int k = 0; k < 3; ++k) d[k] = p.degree()[perm[k]];
    return MPoly::zero(d);
  }
  return r;
}

inline TrilinearMap permute_factors(const TrilinearMap& m, const std::array<int, 3>& perm) {
  TrilinearMap r;
  for (int i = 0; i < 4; ++i) r.f[i] = permute_blocks(m.f[i], perm);
  return r;
}

// ---------------------------------------------------------------------------
// Moving planes

/// A plane-valued form sum_i coeff[i] * x_i with coefficients of multidegree deg.
struct MovingPlane {
  MultiDeg deg{0, 0, 0, 0};
  std::array<MPoly, 4> coeff;

  MPoly pairing(const TrilinearMap& m) const {
    MPoly r = MPoly::zero({deg[0] + 1, deg[1] + 1, deg[2] + 1, 0});
    for (int i = 0; i < 4; ++i) r += coeff[i] * m.f[i];
    return r;
  }

  MPoly as_form() const {
    MultiDeg d = deg;
    d[3] = 1;
    MPoly r = MPoly::zero(d);
    for (int i = 0; i < 4; ++i) r += coeff[i] * MPoly::var(Block::x, i);
    return r;
  }

  Plane at(const Param& p) const {
    auto vals = flat_values(assignment(p));
    Plane L;
    for (int i = 0; i < 4; ++i) L[i] = eval<Rat>(coeff[i], vals);
    return L;
  }

  /// Plane coefficient of a monomial of the parameter blocks.
  Plane plane_of(const Exponent& e) const {
    Plane L;
    for (int i = 0; i < 4; ++i) L[i] = coeff[i].coeff(e);
    return L;
  }
};

inline MovingPlane moving_plane_from_form(const MPoly& form) {
  MovingPlane mp;
  mp.deg = form.degree();
  mp.deg[3] = 0;
  std::array<Terms, 4> t;
  for (const auto& [e, c] : form.terms()) {
    int i = -1;
    for (int k = 0; k < 4; ++k)
      if (e[6 + k]) i = k;
    Exponent f = e;
    f[6 + i] = 0;
    terms::add_term(t[i], f, c);
  }
  for (int i = 0; i < 4; ++i) mp.coeff[i] = MPoly::from_terms(std::move(t[i]), mp.deg);
  return mp;
}

/// Basis of the moving planes of multidegree d (in s, t, u).
inline std::vector<MovingPlane> syzygy_space(const TrilinearMap& m, MultiDeg d) {
  d[3] = 0;
  for (int k = 0; k < 3; ++k)
    if (d[k] < 0 || d[k] > 2) fail(ErrorKind::WrongDegree, "syzygy degrees must lie in 0..2");
  const auto mons = monomials(d);
  const std::size_t nm = mons.size();
  std::map<Exponent, std::size_t, std::greater<Exponent>> row_of;
  for (const auto& e : monomials({d[0] + 1, d[1] + 1, d[2] + 1, 0})) row_of.emplace(e, row_of.size());
  Matrix<Rat> M = zeros<Rat>(row_of.size(), 4 * nm);
  for (int i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < nm; ++k)
      for (const auto& [e, c] : m.f[i].terms()) M[row_of.at(terms::add_exp(e, mons[k]))][i * nm + k] += c;
  std::vector<MovingPlane> out;
  for (auto& v : nullspace(M)) {
    v = normalize(v);
    MovingPlane mp;
    mp.deg = d;
    for (int i = 0; i < 4; ++i) {
      Terms t;
      for (std::size_t k = 0; k < nm; ++k) terms::add_term(t, mons[k], v[i * nm + k]);
      mp.coeff[i] = MPoly::from_terms(std::move(t), d);
    }
    out.push_back(std::move(mp));
  }
  return out;
}

inline MultiDeg unit_degree(int factor) {
  MultiDeg d{0, 0, 0, 0};
  d[factor] = 1;
  return d;
}

// ---------------------------------------------------------------------------
// Dominance

/// Throws NotDominant when the components share a factor or the image is not
/// all of P^3 (Jacobian rank below 4 at several random points).
inline void check_dominant(const TrilinearMap& m, std::uint64_t seed = 1) {
  std::vector<MPoly> fs(m.f.begin(), m.f.end());
  MPoly g = gcd(fs);
  if (!is_constant(g)) fail(ErrorKind::NotDominant, "components share the factor " + g.str());
  std::array<std::array<MPoly, 6>, 4> J;
  for (int i = 0; i < 4; ++i)
    for (int v = 0; v < 6; ++v) J[i][v] = derivative(m.f[i], v);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-20, 20);
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::array<Rat, kNumVars> vals;
    for (auto& x : vals) x = 0;
    for (int v = 0; v < 6; ++v) vals[v] = dist(rng);
    Matrix<Rat> A = zeros<Rat>(4, 6);
    for (int i = 0; i < 4; ++i)
      for (int v = 0; v < 6; ++v) A[i][v] = eval<Rat>(J[i][v], vals);
    if (rank(A) == 4) return;
  }
  fail(ErrorKind::NotDominant, "the image of the map is not dense in P^3");
}

// ---------------------------------------------------------------------------
// Inverse maps and type detection

/// comp[k] = (v0 : v1) of factor k as forms in x.
struct InverseMap {
  std::array<std::array<MPoly, 2>, 3> comp;

  std::array<int, 3> degrees() const {
    return {comp[0][0].degree(Block::x), comp[1][0].degree(Block::x), comp[2][0].degree(Block::x)};
  }

  ProjVec apply(int k, const Pt& x) const {
    Assignment a({}, {}, {}, ProjVec(x.begin(), x.end()));
    return {evaluate(comp[k][0], a), evaluate(comp[k][1], a)};
  }
};

/// (v0 : v1) = (<A1,x> : -<A0,x>) for the unit syzygy v0*A0 + v1*A1 of a factor.
inline std::array<MPoly, 2> inverse_from_syzygy(const MovingPlane& sy, int factor) {
  Exponent e0{}, e1{};
  e0[kBlockStart[factor]] = 1;
  e1[kBlockStart[factor] + 1] = 1;
  Plane A0 = sy.plane_of(e0), A1 = sy.plane_of(e1);
  MPoly p = MPoly::zero({0, 0, 0, 1}), q = MPoly::zero({0, 0, 0, 1});
  for (int i = 0; i < 4; ++i) {
    p += MPoly::var(Block::x, i) * A1[i];
    q -= MPoly::var(Block::x, i) * A0[i];
  }
  auto v = content_free(std::vector<MPoly>{p, q});
  return {v[0], v[1]};
}

/// Quadratic inverse components of a factor: the solutions of
/// sigma0(f) * v1 - sigma1(f) * v0 = 0 with sigma quadratic in x.
inline std::vector<std::array<MPoly, 2>> quadratic_inverse_space(const TrilinearMap& m, int factor) {
  const auto xmons = monomials({0, 0, 0, 2});
  std::vector<MPoly> images;
  for (const auto& e : xmons) {
    MPoly p = MPoly::constant(1);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < e[6 + i]; ++k) p = p * m.f[i];
    images.push_back(p);
  }
  MultiDeg target{2, 2, 2, 0};
  target[factor] += 1;
  std::map<Exponent, std::size_t, std::greater<Exponent>> row_of;
  for (const auto& e : monomials(target)) row_of.emplace(e, row_of.size());
  const std::size_t n = xmons.size();
  Matrix<Rat> M = zeros<Rat>(row_of.size(), 2 * n);
  const MPoly v0 = MPoly::var(kFactors[factor], 0), v1 = MPoly::var(kFactors[factor], 1);
  for (std::size_t k = 0; k < n; ++k) {
    const MPoly p1 = images[k] * v1, p0 = images[k] * v0;
    for (const auto& [e, c] : p1.terms()) M[row_of.at(e)][k] += c;
    for (const auto& [e, c] : p0.terms()) M[row_of.at(e)][n + k] -= c;
  }
  std::vector<std::array<MPoly, 2>> out;
  for (auto& v : nullspace(M)) {
    v = normalize(v);
    Terms a, b;
    for (std::size_t k = 0; k < n; ++k) {
      terms::add_term(a, xmons[k], v[k]);
      terms::add_term(b, xmons[k], v[n + k]);
    }
    out.push_back({MPoly::from_terms(std::move(a), {0, 0, 0, 2}), MPoly::from_terms(std::move(b), {0, 0, 0, 2})});
  }
  return out;
}

struct TypeInfo {
  std::array<int, 3> degrees{};  // inverse degree of each original factor
  std::array<int, 3> type{};     // sorted
  std::array<int, 3> perm{};     // canonical factor k is original factor perm[k]
  InverseMap inverse;            // original factor order
  std::array<std::vector<MovingPlane>, 3> unit_syzygies;
};

inline std::string type_str(const std::array<int, 3>& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

inline TypeInfo detect_type(const TrilinearMap& m) {
  try {
    check_dominant(m);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotDominant) throw;
    fail(ErrorKind::NotBirational, e.what());
  }
  TypeInfo info;
  for (int k = 0; k < 3; ++k) {
    info.unit_syzygies[k] = syzygy_space(m, unit_degree(k));
    if (info.unit_syzygies[k].size() == 1) {
      info.degrees[k] = 1;
      info.inverse.comp[k] = inverse_from_syzygy(info.unit_syzygies[k][0], k);
      continue;
    }
    if (!info.unit_syzygies[k].empty())
      fail(ErrorKind::NotBirational, std::string("factor ") + std::string(kBlockNames[k]) +
                                         " has a multi-dimensional space of linear syzygies");
    auto quad = quadratic_inverse_space(m, k);
    if (quad.size() != 1)
      fail(ErrorKind::NotBirational, std::string("factor ") + std::string(kBlockNames[k]) +
                                         " is not a rational function of degree <= 2 of the image point");
    info.degrees[k] = 2;
    info.inverse.comp[k] = content_free(quad[0]);
  }
  info.perm = {0, 1, 2};
  std::stable_sort(info.perm.begin(), info.perm.end(),
                   [&](int a, int b) { return info.degrees[a] < info.degrees[b]; });
  for (int k = 0; k < 3; ++k) info.type[k] = info.degrees[info.perm[k]];
  return info;
}

inline InverseMap permute_inverse(const InverseMap& inv, const std::array<int, 3>& perm) {
  InverseMap r;
  for (int k = 0; k < 3; ++k) r.comp[k] = inv.comp[perm[k]];
  return r;
}

/// The 2x2 matrix M with ref = M * ours (componentwise on the pair), if any.
inline std::optional<Matrix<Rat>> pair_equivalence(const std::array<MPoly, 2>& ref, const std::array<MPoly, 2>& ours) {
  std::map<Exponent, std::size_t, std::greater<Exponent>> col;
  for (const auto* p : {&ref[0], &ref[1], &ours[0], &ours[1]})
    for (const auto& [e, c] : p->terms()) col.emplace(e, col.size());
  auto vec = [&](const MPoly& p) {
    std::vector<Rat> v(col.size(), Rat(0));
    for (const auto& [e, c] : p.terms()) v[col.at(e)] = c;
    return v;
  };
  // unknowns m00 m01 m10 m11; equations ref_i[e] = m_i0 ours_0[e] + m_i1 ours_1[e]
  const auto o0 = vec(ours[0]), o1 = vec(ours[1]);
  Matrix<Rat> A;
  std::vector<Rat> b;
  for (int i = 0; i < 2; ++i) {
    const auto r = vec(ref[i]);
    for (std::size_t e = 0; e < col.size(); ++e) {
      std::vector<Rat> row(4, Rat(0));
      row[2 * i] = o0[e];
      row[2 * i + 1] = o1[e];
      A.push_back(row);
      b.push_back(r[e]);
    }
  }
  Matrix<Rat> aug = A;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  if (rank(aug) != rank(A) || rank(A) != 4) return std::nullopt;
  Echelon<Rat> e = rref(aug);
  Matrix<Rat> M = zeros<Rat>(2, 2);
  for (std::size_t r = 0; r < e.rows.size(); ++r) M[e.pivots[r] / 2][e.pivots[r] % 2] = e.rows[r][4];
  if (is_zero(det(M))) return std::nullopt;
  return M;
}

// ---------------------------------------------------------------------------
// Sampling verification

struct VerificationReport {
  int samples = 0;
  int passed = 0;
  std::vector<std::string> failures;  // witnesses
  bool ok() const { return passed == samples && failures.empty(); }
};

inline Param random_param(std::mt19937_64& rng, int range = 9) {
  std::uniform_int_distribution<int> d(-range, range);
  Param p;
  for (auto& v : p) {
    do {
      v = {Rat(d(rng)), Rat(d(rng))};
    } while (is_zero_vec(v));
  }
  return p;
}

inline std::string param_str(const Param& p) {
  return vec_str(p[0]) + " x " + vec_str(p[1]) + " x " + vec_str(p[2]);
}

inline VerificationReport verify_birational(const TrilinearMap& m, const InverseMap& inv, int n, std::uint64_t seed) {
  if (n < 1) fail(ErrorKind::ZeroInput, "at least one sample is required");
  VerificationReport rep;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    Param p;
    Pt x;
    std::array<ProjVec, 3> back;
    int redraws = 0;
    while (true) {
      p = random_param(rng);
      x = eval_raw(m, p);
      bool usable = !is_zero_vec(x);
      for (int k = 0; k < 3 && usable; ++k) {
        back[k] = inv.apply(k, x);
        usable = !is_zero_vec(back[k]);
      }
      if (usable) break;
      if (++redraws > 1000) fail(ErrorKind::BasePoint, "could not avoid the base locus in 1000 draws");
    }
    ++rep.samples;
    bool good = true;
    for (int k = 0; k < 3; ++k) good = good && proportional(back[k], p[k]);
    if (good) {
      ++rep.passed;
    } else {
      rep.failures.push_back("at " + param_str(p) + " image " + vec_str(x) + " maps back to " + vec_str(back[0]) +
                             " x " + vec_str(back[1]) + " x " + vec_str(back[2]));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Fiber oracle

struct Fiber {
  std::vector<Param> rational;
  int irrational = 0;
  std::size_t size() const { return rational.size() + std::size_t(irrational); }
};

namespace detail {

inline MPoly square_free_part(const MPoly& p, Block b) {
  MPoly r = MPoly::constant(1);
  for (const auto& [f, k] : square_free_factors(p, b)) r = r * f;
  return r;
}

inline MPoly random_combination(const std::vector<MPoly>& ps, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(1, 30);
  MPoly r = MPoly::zero(ps.front().degree());
  for (const auto& p : ps) r += p * Rat(d(rng));
  return r;
}

/// Polynomial in u vanishing at the u-coordinates of the common zeros of ps
/// (binary forms in t and u); zero when the common zero set is a curve.
inline MPoly eliminate_t(const std::vector<MPoly>& ps, std::mt19937_64& rng) {
  std::vector<MPoly> nz;
  for (const auto& p : ps)
    if (!p.is_zero()) nz.push_back(p);
  if (nz.empty()) return MPoly::zero({0, 0, 0, 0});
  bool any_t = false;
  for (const auto& p : nz) any_t = any_t || p.degree(Block::t) > 0;
  if (!any_t) return gcd(nz);
  if (nz.size() == 1) return MPoly::zero({0, 0, 0, 0});
  MPoly h;
  bool have = false;
  for (int round = 0; round < 2; ++round) {
    MPoly e1 = random_combination(nz, rng), e2 = random_combination(nz, rng);
    if (e1.is_zero() || e2.is_zero() || e1.degree(Block::t) == 0 || e2.degree(Block::t) == 0) continue;
    MPoly r = sylvester_resultant(e1, e2, Block::t);
    h = have ? gcd(h, r) : r;
    have = true;
  }
  return have ? h : MPoly::zero({0, 0, 0, 0});
}

}  // namespace detail

/// All parameter points mapping to x: rational ones explicitly, the rest
/// counted. Elimination of s by the rank condition on the minors, of t by
/// resultants, then back-substitution.
inline Fiber fiber_solve(const TrilinearMap& m, const Pt& x, std::uint64_t seed = 5) {
  std::mt19937_64 rng(seed);
  std::vector<MPoly> P, Q;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      MPoly minor = m.f[i] * x[j] - m.f[j] * x[i];
      P.push_back(substitute_block(minor, Block::s, {1, 0}));
      Q.push_back(substitute_block(minor, Block::s, {0, 1}));
    }
  std::vector<MPoly> D;
  for (std::size_t a = 0; a < P.size(); ++a)
    for (std::size_t b = a + 1; b < P.size(); ++b) {
      MPoly d = P[a] * Q[b] - P[b] * Q[a];
      if (!d.is_zero()) D.push_back(d);
    }
  if (D.empty()) fail(ErrorKind::DegenerateTarget, "every (t,u) has an s over " + vec_str(x));
  MPoly G = gcd(D);
  for (auto& d : D) d = *d.divide(G);
  MPoly H = detail::eliminate_t(D, rng);
  if (H.is_zero()) fail(ErrorKind::DegenerateTarget, "the fiber over " + vec_str(x) + " is not finite");

  // u-coordinates of isolated points where the s-line degenerates
  std::vector<MPoly> S;
  std::array<MPoly, 4> p0, p1;
  for (int i = 0; i < 4; ++i) {
    p0[i] = substitute_block(m.f[i], Block::s, {1, 0});
    p1[i] = substitute_block(m.f[i], Block::s, {0, 1});
  }
  {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        MPoly w = p0[i] * p1[j] - p0[j] * p1[i];
        if (!w.is_zero()) S.push_back(w);
      }
  }
  MPoly B2 = MPoly::constant(1);
  if (!S.empty()) {
    MPoly G0 = gcd(S);
    for (auto& w : S) w = *w.divide(G0);
    MPoly e = detail::eliminate_t(S, rng);
    if (!e.is_zero() && !is_constant(e)) B2 = e;
  }
  // rational u-roots are checked directly; the base filter only guards the
  // count of irrational ones
  MPoly Hs = is_constant(H) ? H : detail::square_free_part(H, Block::u);
  Fiber out;
  if (is_constant(Hs)) return out;
  BinaryRoots ur = binary_roots(Hs, Block::u);
  MPoly Hf = Hs;
  if (!is_constant(B2)) Hf = *Hs.divide(gcd(Hs, detail::square_free_part(B2, Block::u)));
  if (!is_constant(Hf)) out.irrational += binary_roots(Hf, Block::u).irrational;
  for (const auto& u : ur.rational) {
    std::vector<MPoly> Dt;
    for (const auto& d : D) {
      MPoly r = substitute_block(d, Block::u, u);
      if (!r.is_zero()) Dt.push_back(r);
    }
    if (Dt.empty()) fail(ErrorKind::DegenerateTarget, "a whole t-line lies over " + vec_str(x));
    MPoly gt = gcd(Dt);
    if (is_constant(gt)) continue;
    BinaryRoots tr = binary_roots(gt, Block::t);
    if (tr.irrational > 0) {
      // drop t-roots where the recovered s lands on a base point of the map
      MPoly R = detail::square_free_part(gt, Block::t), Z = R;
      for (std::size_t k = 0; k < P.size() && !is_constant(Z); ++k) {
        MPoly Pk = substitute_block(P[k], Block::u, u), Qk = substitute_block(Q[k], Block::u, u);
        std::vector<MPoly> img{R};
        for (int i = 0; i < 4; ++i)
          img.push_back(Qk * substitute_block(p0[i], Block::u, u) - Pk * substitute_block(p1[i], Block::u, u));
        Z = gcd(Z, gcd(img));
      }
      MPoly kept = *R.divide(Z);
      if (!is_constant(kept)) out.irrational += binary_roots(kept, Block::t).irrational;
    }
    for (const auto& t : tr.rational) {
      ProjVec s;
      for (std::size_t k = 0; k < P.size() && s.empty(); ++k) {
        Rat pv = evaluate(P[k], Assignment({}, t, u)), qv = evaluate(Q[k], Assignment({}, t, u));
        if (!is_zero(pv) || !is_zero(qv)) s = normalize(ProjVec{qv, -pv});
      }
      if (s.empty()) continue;
      Param p{s, t, u};
      Pt y = eval_raw(m, p);
      if (is_zero_vec(y) || !proportional(y, x)) continue;
      if (std::find(out.rational.begin(), out.rational.end(), p) == out.rational.end()) out.rational.push_back(p);
    }
  }
  return out;
}

}  // namespace linecong
