#pragma once

// The parametric line congruences S, T, U of a trilinear map: Pluecker
// parameterizations, spans in P^5, focal lines, conics and points, and exact
// incidence certificates.

#include <optional>
#include <string>
#include <vector>

#include "linecong/maps.hpp"
#include "linecong/special_planes.hpp"

namespace linecong {

inline constexpr std::array<std::string_view, 3> kFamilyNames{"S", "T", "U"};

/// Lines of family k: the k-parameter varies along each line, the other two
/// parameters index the lines.
struct CongruenceParam {
  int family = 0;
  std::array<MPoly, 6> coeffs;
  std::array<int, 2> bidegree{};  // degrees in the two surviving blocks, in order

  std::array<int, 2> blocks() const {
    if (family == 0) return {1, 2};
    if (family == 1) return {0, 2};
    return {0, 1};
  }

  Line at(const ProjVec& p, const ProjVec& q) const {
    ProjVec args[3];
    auto b = blocks();
    args[b[0]] = p;
    args[b[1]] = q;
    Assignment a(args[0], args[1], args[2]);
    Line l;
    for (int i = 0; i < 6; ++i) l[i] = evaluate(coeffs[i], a);
    return l;
  }
};

namespace detail {

inline MultiDeg common_degree(const std::array<MPoly, 6>& c) {
  for (const auto& p : c)
    if (!p.is_zero()) return p.degree();
  return c[0].degree();
}

inline CongruenceParam make_param(int family, std::array<MPoly, 6> c) {
  CongruenceParam C;
  C.family = family;
  C.coeffs = content_free(c);
  MultiDeg d = common_degree(C.coeffs);
  auto b = C.blocks();
  C.bidegree = {d[b[0]], d[b[1]]};
  return C;
}

inline std::array<MPoly, 6> wedge_poly(const std::array<MPoly, 4>& a, const std::array<MPoly, 4>& b) {
  auto m = [&](int i, int j) -> MPoly { return a[i] * b[j] - a[j] * b[i]; };
  return {m(0, 1), m(0, 2), m(0, 3), m(2, 3), m(3, 1), m(1, 2)};
}

inline bool all_zero(const std::array<MPoly, 6>& c) {
  for (const auto& p : c)
    if (!p.is_zero()) return false;
  return true;
}

}  // namespace detail

/// Wedge of the two points Phi(k = (1:0)) and Phi(k = (0:1)).
inline CongruenceParam biquadratic_param(const TrilinearMap& m, int family) {
  std::array<MPoly, 4> p, q;
  for (int i = 0; i < 4; ++i) {
    p[i] = substitute_block(m.f[i], kFactors[family], {1, 0});
    q[i] = substitute_block(m.f[i], kFactors[family], {0, 1});
  }
  auto c = detail::wedge_poly(p, q);
  if (detail::all_zero(c))
    fail(ErrorKind::DegenerateFamily, std::string(kFamilyNames[family]) + "-lines are undefined: the wedge vanishes");
  return detail::make_param(family, c);
}

/// Wedge of two moving planes free of the family's parameter, read as a line.
inline CongruenceParam syzygy_param(const MovingPlane& a, const MovingPlane& b, int family) {
  if (a.deg[family] != 0 || b.deg[family] != 0)
    fail(ErrorKind::WrongDegree, std::string("syzygies depend on the ") + std::string(kBlockNames[family]) + " block");
  auto g = detail::wedge_poly(a.coeff, b.coeff);
  if (detail::all_zero(g)) fail(ErrorKind::DependentSyzygies, "the two moving planes are dependent");
  return detail::make_param(family, {g[3], g[4], g[5], g[0], g[1], g[2]});
}

/// Two moving planes of least degree free of the family's parameter whose wedge is nonzero.
inline std::pair<MovingPlane, MovingPlane> family_syzygies(const TrilinearMap& m, int family) {
  std::vector<MultiDeg> degs;
  for (int total = 1; total <= 4; ++total)
    for (int x = 0; x <= 2; ++x)
      for (int y = 0; y <= 2; ++y) {
        if (x + y != total) continue;
        MultiDeg d{0, 0, 0, 0};
        int slot = 0;
        for (int k = 0; k < 3; ++k)
          if (k != family) d[k] = slot++ == 0 ? x : y;
        degs.push_back(d);
      }
  std::optional<MovingPlane> first;
  for (const auto& d : degs)
    for (const auto& sy : syzygy_space(m, d)) {
      if (!first) {
        first = sy;
        continue;
      }
      if (!detail::all_zero(detail::wedge_poly(first->coeff, sy.coeff))) return {*first, sy};
    }
  fail(ErrorKind::DependentSyzygies, std::string("no independent moving planes for family ") +
                                         std::string(kFamilyNames[family]));
}

inline CongruenceParam syzygy_param(const TrilinearMap& m, int family) {
  auto [a, b] = family_syzygies(m, family);
  return syzygy_param(a, b, family);
}

inline MPoly klein_form_poly(const CongruenceParam& C) {
  const auto& c = C.coeffs;
  return c[0] * c[3] + c[1] * c[4] + c[2] * c[5];
}

/// Coefficientwise cross products c_i d_j - c_j d_i.
inline bool params_agree(const CongruenceParam& A, const CongruenceParam& B) {
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      MPoly x = A.coeffs[i] * B.coeffs[j];
      MPoly y = A.coeffs[j] * B.coeffs[i];
      if (!(x - y).is_zero()) return false;
    }
  return true;
}

/// Basis of the linear span of the congruence in P^5.
inline std::vector<Line> span(const CongruenceParam& C) {
  std::map<Exponent, std::size_t, std::greater<Exponent>> col;
  for (const auto& p : C.coeffs)
    for (const auto& [e, c] : p.terms()) col.emplace(e, col.size());
  Matrix<Rat> M = zeros<Rat>(col.size(), 6);
  for (int i = 0; i < 6; ++i)
    for (const auto& [e, c] : C.coeffs[i].terms()) M[col.at(e)][i] = c;
  std::vector<Line> out;
  for (const auto& r : row_basis(M)) {
    Line l;
    std::copy(r.begin(), r.end(), l.begin());
    out.push_back(normalize(l));
  }
  return out;
}

inline bool totally_isotropic(const std::vector<Line>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j)
      if (!is_zero(klein_pairing(basis[i], basis[j]))) return false;
  return true;
}

/// Star of lines through a point (span 3, isotropic, lines concurrent).
inline std::optional<Pt> star_center(const std::vector<Line>& basis) {
  if (basis.size() != 3 || !totally_isotropic(basis)) return std::nullopt;
  auto p = meet_point(basis[0], basis[1]);
  if (!p) return std::nullopt;
  for (const auto& l : basis)
    if (!point_on_line(*p, l)) return std::nullopt;
  return normalize(*p);
}

/// Focal lines of a linear congruence: the quadric points of the polar pencil.
/// A star of lines (span 3) is reported as Degenerate.
inline PencilClassification focal_lines_linear(const CongruenceParam& C) {
  auto sp = span(C);
  if (sp.size() == 4) {
    auto pol = polar_subspace(sp);
    return pencil_vs_quadric(normalize(pol[0]), normalize(pol[1]));
  }
  if (sp.size() == 3 && totally_isotropic(sp)) {
    if (!star_center(sp)) fail(ErrorKind::PlanarCongruence, "all lines of the congruence lie in one plane");
    PencilClassification pc;
    pc.kind = PencilKind::Degenerate;
    return pc;
  }
  fail(ErrorKind::NotLinear, "span of dimension " + std::to_string(sp.size()) + " is not a 3-space of P^5");
}

// ---------------------------------------------------------------------------
// Focal varieties and certificates

enum class FocalKind { RealLine, ConjugateLinePair, DoubleLine, Conic, FocalPoint };

inline std::string_view to_string(FocalKind k) {
  switch (k) {
    case FocalKind::RealLine: return "RealLine";
    case FocalKind::ConjugateLinePair: return "ConjugateLinePair";
    case FocalKind::DoubleLine: return "DoubleLine";
    case FocalKind::Conic: return "Conic";
    case FocalKind::FocalPoint: return "FocalPoint";
  }
  return "?";
}

struct FocalVariety {
  FocalKind kind = FocalKind::RealLine;
  std::vector<Line6<Ext>> lines;  // one line, or a conjugate pair over Q(sqrt d)
  Rat d{1};
  Plane plane{};       // conic
  Matrix<Rat> form;    // conic: symmetric 4x4
  Pt point{};          // focal point
  std::string name;    // letter of the normal form, when identified

  static FocalVariety real_line(const Line& l, FocalKind k = FocalKind::RealLine) {
    FocalVariety f;
    f.kind = k;
    Line6<Ext> e;
    for (int i = 0; i < 6; ++i) e[i] = Ext(l[i]);
    f.lines = {normalize_ext(e)};
    return f;
  }
  Line line() const { return normalize(rational_part(lines.at(0))); }
};

/// Symmetric matrix of the quadric (a.x)(b.x).
inline Matrix<Rat> sym_product(const Plane& a, const Plane& b) {
  Matrix<Rat> M = zeros<Rat>(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) M[i][j] = (a[i] * b[j] + a[j] * b[i]) / 2;
  return M;
}

inline Plane rational_plane(const Pt4<Ext>& p, const char* what) {
  Plane r;
  for (int i = 0; i < 4; ++i) {
    if (!p[i].is_rational()) fail(ErrorKind::ExtensionMismatch, std::string(what) + " is not rational");
    r[i] = p[i].a;
  }
  return r;
}

/// Rank of the quadric restricted to the conic's plane.
inline std::size_t conic_rank(const FocalVariety& c) {
  Matrix<Rat> row{{c.plane[0], c.plane[1], c.plane[2], c.plane[3]}};
  auto basis = nullspace(row, 4);
  Matrix<Rat> R = zeros<Rat>(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) R[i][j] += basis[i][p] * c.form[p][q] * basis[j][q];
  return rank(R);
}

inline Rat quadric_value(const Matrix<Rat>& M, const Pt& x) {
  Rat v = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v += x[i] * M[i][j] * x[j];
  return v;
}

/// Focal conic of the quadratic families: plane C1 with AB - C0^2 for type
/// (1,1,2) (families S, T); plane D with w1 BC + w2 AC + w3 AB for type (2,2,2).
/// The family index is canonical.
inline FocalVariety focal_conic(const SpecialPlaneData& s, int family) {
  FocalVariety f;
  f.kind = FocalKind::Conic;
  f.name = "c";
  if (s.type == std::array<int, 3>{1, 1, 2} && family < 2) {
    Plane A = rational_plane(s.plane("A"), "A"), B = rational_plane(s.plane("B"), "B"),
          C0 = rational_plane(s.plane("C0"), "C0");
    f.plane = normalize(rational_plane(s.plane("C1"), "C1"));
    f.form = sym_product(A, B);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) f.form[i][j] -= C0[i] * C0[j];
    return f;
  }
  if (s.type == std::array<int, 3>{2, 2, 2}) {
    Plane A = rational_plane(s.plane("A"), "A"), B = rational_plane(s.plane("B"), "B"),
          C = rational_plane(s.plane("C"), "C");
    Rat w[3];
    for (int k = 0; k < 3; ++k) {
      if (!s.weights[k].is_rational()) fail(ErrorKind::ExtensionMismatch, "weights are not rational");
      w[k] = s.weights[k].a;
    }
    f.plane = normalize(rational_plane(s.plane("D"), "D"));
    f.form = zeros<Rat>(4, 4);
    const Matrix<Rat> terms[3] = {sym_product(B, C), sym_product(A, C), sym_product(A, B)};
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) f.form[i][j] += w[k] * terms[k][i][j];
    return f;
  }
  fail(ErrorKind::WrongType, "no focal conic for family " + std::string(kFamilyNames[family]) + " of type " +
                                 type_str(s.type));
}

struct Certificate {
  bool ok = false;
  std::vector<MPoly> residuals;                        // all zero when ok
  std::optional<std::pair<ProjVec, ProjVec>> witness;  // parameters where incidence fails
  std::string str() const {
    if (ok) return "zero polynomial";
    if (witness) return "fails at " + vec_str(witness->first) + " x " + vec_str(witness->second);
    return "fails";
  }
};

namespace detail {

inline MPoly pairing_poly(const Line& F, const std::array<MPoly, 6>& c, const MultiDeg& zero) {
  MPoly r = MPoly::zero(zero);
  for (int i = 0; i < 6; ++i)
    if (!is_zero(F[i])) r += c[(i + 3) % 6] * F[i];
  return r;
}

inline std::array<MPoly, 4> contract_poly(const std::array<MPoly, 6>& c, const Plane& g, const MultiDeg& zero) {
  // B01=c0, B02=c1, B03=c2, B23=c3, B13=-c4, B12=c5; p_j = sum_i g_i B_ij
  std::array<std::array<MPoly, 4>, 4> B;
  for (auto& row : B) row.fill(MPoly::zero(zero));
  auto set = [&](int i, int j, const MPoly& v) {
    B[i][j] = v;
    B[j][i] = -v;
  };
  set(0, 1, c[0]);
  set(0, 2, c[1]);
  set(0, 3, c[2]);
  set(2, 3, c[3]);
  set(1, 3, -c[4]);
  set(1, 2, c[5]);
  std::array<MPoly, 4> p;
  for (int j = 0; j < 4; ++j) {
    p[j] = MPoly::zero(zero);
    for (int i = 0; i < 4; ++i)
      if (!is_zero(g[i])) p[j] += B[i][j] * g[i];
  }
  return p;
}

inline std::array<MPoly, 4> trivector_poly(const Pt& P, const std::array<MPoly, 6>& c, const MultiDeg& zero) {
  std::array<std::array<MPoly, 4>, 4> B;
  for (auto& row : B) row.fill(MPoly::zero(zero));
  auto set = [&](int i, int j, const MPoly& v) {
    B[i][j] = v;
    B[j][i] = -v;
  };
  set(0, 1, c[0]);
  set(0, 2, c[1]);
  set(0, 3, c[2]);
  set(2, 3, c[3]);
  set(1, 3, -c[4]);
  set(1, 2, c[5]);
  static constexpr int idx[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  std::array<MPoly, 4> r;
  for (int n = 0; n < 4; ++n) {
    int i = idx[n][0], j = idx[n][1], k = idx[n][2];
    r[n] = B[j][k] * P[i] - B[i][k] * P[j] + B[i][j] * P[k];
  }
  return r;
}

/// Small parameter values where some residual is nonzero.
inline std::optional<std::pair<ProjVec, ProjVec>> find_witness(const CongruenceParam& C,
                                                               const std::vector<MPoly>& residuals) {
  auto b = C.blocks();
  for (int n = 0; n <= 12; ++n)
    for (int i = -n; i <= n; ++i)
      for (int j = -n; j <= n; ++j) {
        if (std::max(std::abs(i), std::abs(j)) != n) continue;
        ProjVec p{Rat(i), Rat(1)}, q{Rat(j), Rat(1)};
        ProjVec args[3];
        args[b[0]] = p;
        args[b[1]] = q;
        Assignment a(args[0], args[1], args[2]);
        for (const auto& r : residuals)
          if (!is_zero(evaluate(r, a))) return std::pair{p, q};
      }
  return std::nullopt;
}

inline Certificate certify(const CongruenceParam& C, std::vector<MPoly> residuals) {
  Certificate cert;
  cert.ok = true;
  for (const auto& r : residuals) cert.ok = cert.ok && r.is_zero();
  if (!cert.ok) cert.witness = find_witness(C, residuals);
  cert.residuals = std::move(residuals);
  return cert;
}

}  // namespace detail

/// Exact incidence of every member line with a line (split into rational and
/// irrational parts over Q(sqrt d)).
inline Certificate line_certificate(const CongruenceParam& C, const Line6<Ext>& F) {
  Line re, im;
  for (int i = 0; i < 6; ++i) {
    re[i] = F[i].a;
    im[i] = F[i].b;
  }
  const MultiDeg z = detail::common_degree(C.coeffs);
  std::vector<MPoly> res{detail::pairing_poly(re, C.coeffs, z)};
  if (!is_zero_vec(im)) res.push_back(detail::pairing_poly(im, C.coeffs, z));
  return detail::certify(C, res);
}

inline Certificate incidence_certificate(const CongruenceParam& C, const FocalVariety& F) {
  const MultiDeg z = detail::common_degree(C.coeffs);
  switch (F.kind) {
    case FocalKind::RealLine:
    case FocalKind::DoubleLine:
    case FocalKind::ConjugateLinePair: {
      Certificate all;
      all.ok = true;
      for (const auto& l : F.lines) {
        Certificate c = line_certificate(C, l);
        for (auto& r : c.residuals) all.residuals.push_back(r);
        if (!c.ok && all.ok) {
          all.ok = false;
          all.witness = c.witness;
        }
      }
      return all;
    }
    case FocalKind::Conic: {
      auto X = detail::contract_poly(C.coeffs, F.plane, z);
      MultiDeg z2 = z;
      for (auto& v : z2) v *= 2;
      MPoly q = MPoly::zero(z2);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (!is_zero(F.form[i][j])) q += X[i] * X[j] * F.form[i][j];
      return detail::certify(C, {q});
    }
    case FocalKind::FocalPoint: {
      auto r = detail::trivector_poly(F.point, C.coeffs, z);
      return detail::certify(C, std::vector<MPoly>(r.begin(), r.end()));
    }
  }
  return {};
}

/// Center of a degenerate congruence, certified symbolically.
inline Pt focal_point(const CongruenceParam& C) {
  auto sp = span(C);
  auto p = star_center(sp);
  if (!p) {
    if (sp.size() == 3 && totally_isotropic(sp))
      fail(ErrorKind::PlanarCongruence, "all lines of the congruence lie in one plane");
    fail(ErrorKind::NotDegenerate, "the congruence is not a star of lines");
  }
  FocalVariety f;
  f.kind = FocalKind::FocalPoint;
  f.point = *p;
  if (!incidence_certificate(C, f).ok) fail(ErrorKind::InconsistentData, "focal point fails its certificate");
  return *p;
}

/// The polar point of a congruence spanning a hyperplane of P^5.
inline std::optional<Line> polar_point(const CongruenceParam& C) {
  auto sp = span(C);
  if (sp.size() != 5) return std::nullopt;
  return normalize(polar_subspace(sp).at(0));
}

// ---------------------------------------------------------------------------
// Focal conic from the congruence alone

namespace detail {

inline Pt eval_pt(const std::array<MPoly, 4>& X, const Assignment& a) {
  Pt p;
  for (int i = 0; i < 4; ++i) p[i] = evaluate(X[i], a);
  return p;
}

inline Rat det4(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  Matrix<Rat> m{{a[0], a[1], a[2], a[3]}, {b[0], b[1], b[2], b[3]}, {c[0], c[1], c[2], c[3]}, {d[0], d[1], d[2], d[3]}};
  return det(m);
}

inline Pt comb(const Rat& x, const Pt& p, const Rat& y, const Pt& q) {
  Pt r;
  for (int i = 0; i < 4; ++i) r[i] = x * p[i] + y * q[i];
  return r;
}

inline Rat dot4(const Plane& g, const Pt& p) { return g[0] * p[0] + g[1] * p[1] + g[2] * p[2] + g[3] * p[3]; }

}  // namespace detail

/// Second focal point on each member line, given the first focal curve `l`;
/// the points are fitted to a plane conic. Empty when they do not lie on one.
inline std::optional<FocalVariety> sampled_conic(const CongruenceParam& C, const Line& l, int wanted = 12) {
  const MultiDeg z = detail::common_degree(C.coeffs);
  const auto b = C.blocks();
  const int vp = kBlockStart[b[0]], vq = kBlockStart[b[1]];
  std::array<std::array<MPoly, 4>, 4> X, Xp, Xq;
  for (int i = 0; i < 4; ++i) {
    X[i] = detail::contract_poly(C.coeffs, unit4<Rat>(i), z);
    for (int k = 0; k < 4; ++k) {
      Xp[i][k] = derivative(X[i][k], vp);
      Xq[i][k] = derivative(X[i][k], vq);
    }
  }
  const auto gs = planes_through(l);
  std::vector<Pt> pts;
  for (int n = 1; n <= 12 && int(pts.size()) < wanted; ++n)
    for (int pi = -n; pi <= n && int(pts.size()) < wanted; ++pi)
      for (int qi = -n; qi <= n && int(pts.size()) < wanted; ++qi) {
        if (std::max(std::abs(pi), std::abs(qi)) != n) continue;
        ProjVec args[3];
        args[b[0]] = {Rat(pi), Rat(1)};
        args[b[1]] = {Rat(qi), Rat(1)};
        Assignment a(args[0], args[1], args[2]);
        // two points spanning the member line
        int i = -1, j = -1;
        Pt x, y;
        for (int r = 0; r < 4 && j < 0; ++r) {
          Pt v = detail::eval_pt(X[r], a);
          if (is_zero_vec(v)) continue;
          if (i < 0) {
            i = r;
            x = v;
          } else if (!proportional(x, v)) {
            j = r;
            y = v;
          }
        }
        if (j < 0) continue;
        Pt xp = detail::eval_pt(Xp[i], a), xq = detail::eval_pt(Xq[i], a);
        Pt yp = detail::eval_pt(Xp[j], a), yq = detail::eval_pt(Xq[j], a);
        // det[x, y, m xp + l yp, m xq + l yq] = A m^2 + B m l + C l^2
        Rat A = detail::det4(x, y, xp, xq);
        Rat B = detail::det4(x, y, xp, yq) + detail::det4(x, y, yp, xq);
        Rat Cc = detail::det4(x, y, yp, yq);
        if (is_zero(A) && is_zero(B) && is_zero(Cc)) continue;
        // the point where the member line meets l
        Rat m1, l1;
        bool found = false;
        for (const auto& g : gs) {
          m1 = detail::dot4(g, y);
          l1 = -detail::dot4(g, x);
          if (!is_zero(m1) || !is_zero(l1)) {
            found = true;
            break;
          }
        }
        if (!found) continue;
        if (!is_zero(A * m1 * m1 + B * m1 * l1 + Cc * l1 * l1)) return std::nullopt;
        // (l1 m - m1 l)(al m + be l)
        Rat al, be;
        if (!is_zero(l1)) {
          al = A / l1;
          be = (B + m1 * al) / l1;
        } else {
          be = -Cc / m1;
          al = -B / m1;
        }
        if (is_zero(al) && is_zero(be)) continue;
        Pt zc = detail::comb(be, x, -al, y);
        if (point_on_line(zc, l)) continue;
        zc = normalize(zc);
        if (std::find(pts.begin(), pts.end(), zc) == pts.end()) pts.push_back(zc);
      }
  if (pts.size() < 6) return std::nullopt;
  Matrix<Rat> P;
  for (const auto& p : pts) P.emplace_back(p.begin(), p.end());
  auto ns = nullspace(P, 4);
  if (ns.size() != 1) return std::nullopt;
  FocalVariety f;
  f.kind = FocalKind::Conic;
  f.name = "c";
  std::copy(ns[0].begin(), ns[0].end(), f.plane.begin());
  f.plane = normalize(f.plane);
  // plane coordinates: the point is sum_k w_k basis_k
  Matrix<Rat> row{{f.plane[0], f.plane[1], f.plane[2], f.plane[3]}};
  auto basis = nullspace(row, 4);
  Matrix<Rat> Bt = zeros<Rat>(4, 3);
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < 4; ++r) Bt[r][k] = basis[k][r];
  // a left inverse L of Bt: rows of L solve L * Bt = I
  Matrix<Rat> Lmat = zeros<Rat>(3, 4);
  {
    // pick three independent coordinate rows of Bt
    std::vector<int> rows;
    for (int r = 0; r < 4 && rows.size() < 3; ++r) {
      Matrix<Rat> trial;
      for (int q : rows) trial.push_back(Bt[q]);
      trial.push_back(Bt[r]);
      if (rank(trial) == trial.size()) rows.push_back(r);
    }
    Matrix<Rat> S;
    for (int q : rows) S.push_back(Bt[q]);
    auto Si = *inverse(S);
    for (int k = 0; k < 3; ++k)
      for (int c = 0; c < 3; ++c) Lmat[k][rows[c]] = Si[k][c];
  }
  Matrix<Rat> fit;
  for (const auto& p : pts) {
    std::vector<Rat> w(3, Rat(0));
    for (int k = 0; k < 3; ++k)
      for (int r = 0; r < 4; ++r) w[k] += Lmat[k][r] * p[r];
    fit.push_back({w[0] * w[0], w[1] * w[1], w[2] * w[2], w[0] * w[1], w[0] * w[2], w[1] * w[2]});
  }
  auto q = nullspace(fit, 6);
  if (q.size() != 1) return std::nullopt;
  Matrix<Rat> Q{{q[0][0], q[0][3] / 2, q[0][4] / 2}, {q[0][3] / 2, q[0][1], q[0][5] / 2}, {q[0][4] / 2, q[0][5] / 2, q[0][2]}};
  f.form = zeros<Rat>(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) f.form[r][c] += Lmat[i][r] * Q[i][j] * Lmat[j][c];
  return f;
}

}  // namespace linecong
