#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "linecong/pluecker.hpp"
#include "linecong/tensor.hpp"
#include "support.hpp"

using namespace linecong;
using linecong::testing::rand_int;
using linecong::testing::rand_rat;

namespace {

Pt pt(long a, long b, long c, long d) { return {Rat(a), Rat(b), Rat(c), Rat(d)}; }
Line ln(long a, long b, long c, long d, long e, long f) { return {Rat(a), Rat(b), Rat(c), Rat(d), Rat(e), Rat(f)}; }

Pt rand_pt(std::mt19937_64& rng) {
  while (true) {
    Pt p;
    for (auto& x : p) x = rand_rat(rng, 6, 3);
    if (!is_zero_vec(p)) return p;
  }
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Io;
}

Rat det4(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  Matrix<Rat> m;
  for (const Pt* p : {&a, &b, &c, &d}) m.emplace_back(p->begin(), p->end());
  return det(m);
}

// dim of a span of 6-vectors
std::size_t dim(const std::vector<Line>& vs) {
  Matrix<Rat> m;
  for (const auto& v : vs) m.emplace_back(v.begin(), v.end());
  return m.empty() ? 0 : rank(m);
}

}  // namespace

TEST(LineFromPoints, Examples) {
  EXPECT_EQ(line_from_points(pt(1, 0, 0, 0), pt(0, 1, 0, 0)), ln(1, 0, 0, 0, 0, 0));
  EXPECT_EQ(line_from_points(pt(1, 0, 1, 0), pt(0, 1, 0, 1)), ln(1, 0, 1, 1, 0, -1));
  EXPECT_EQ(kind_of([] { line_from_points(pt(1, 2, 3, 4), pt(2, 4, 6, 8)); }), ErrorKind::CoincidentPoints);
}

TEST(LineFromPlanes, Examples) {
  EXPECT_EQ(line_from_planes(pt(0, 0, 1, 0), pt(0, 0, 0, 1)), ln(1, 0, 0, 0, 0, 0));
  EXPECT_EQ(line_from_planes(pt(1, 0, -1, 0), pt(0, 1, 0, -1)), ln(1, 0, 1, 1, 0, -1));
  EXPECT_EQ(line_from_planes(pt(1, 0, 0, 0), pt(0, 1, 0, 0)), ln(0, 0, 0, 1, 0, 0));
  EXPECT_EQ(kind_of([] { line_from_planes(pt(1, 1, 0, 0), pt(-2, -2, 0, 0)); }), ErrorKind::CoincidentPlanes);
}

TEST(KleinPairing, Examples) {
  EXPECT_NE(klein_pairing(ln(1, 0, 0, 0, 0, 0), ln(0, 0, 0, 1, 0, 0)), 0);
  EXPECT_EQ(klein_pairing(ln(1, 0, 0, 0, 0, 0), ln(1, 0, 0, 0, 0, 0)), 0);
  EXPECT_EQ(klein_pairing(ln(1, 0, 0, 0, 0, 0), ln(0, 1, 0, 0, 0, 0)), 0);
  Line v = ln(3, -1, 2, 5, 7, -4);
  EXPECT_EQ(klein_pairing(v, v), 2 * klein_form(v));
}

TEST(Contraction, Examples) {
  Line e03 = line_from_points(pt(1, 0, 0, 0), pt(0, 0, 0, 1));
  EXPECT_TRUE(proportional(contraction(e03, pt(0, 0, 0, 1)), pt(1, 0, 0, 0)));
  EXPECT_TRUE(proportional(contraction(ln(1, 0, 1, 1, 0, -1), pt(1, 0, 0, 0)), pt(0, 1, 0, 1)));
  // e0^e1 lies in x3 = 0 (and in x2 = 0): the contraction vanishes
  EXPECT_EQ(kind_of([] { contraction(ln(1, 0, 0, 0, 0, 0), pt(0, 0, 0, 1)); }), ErrorKind::LineInPlane);
  EXPECT_EQ(kind_of([] { contraction(ln(1, 0, 0, 0, 0, 0), pt(0, 0, 1, 0)); }), ErrorKind::LineInPlane);
  Pt p = contraction(ln(1, 0, 0, 0, 0, 0), pt(1, 1, 0, 1));
  EXPECT_TRUE(point_on_line(p, ln(1, 0, 0, 0, 0, 0)));
  EXPECT_TRUE(proportional(p, pt(1, -1, 0, 0)));
}

TEST(PolarSubspace, Examples) {
  auto p1 = polar_subspace<Rat>({ln(1, 0, 0, 0, 0, 0)});
  EXPECT_EQ(p1.size(), 5u);
  auto with = p1;
  with.push_back(ln(0, 1, 0, 0, 0, 0));
  EXPECT_EQ(dim(with), 5u);

  // lines meeting both e0^e1 and e2^e3
  Line a = ln(1, 0, 0, 0, 0, 0), b = ln(0, 0, 0, 1, 0, 0);
  auto span = polar_subspace<Rat>({a, b});
  ASSERT_EQ(span.size(), 4u);
  auto polar = polar_subspace(span);
  ASSERT_EQ(polar.size(), 2u);
  auto check = polar;
  check.push_back(a);
  check.push_back(b);
  EXPECT_EQ(dim(check), 2u);

  std::vector<Line> all;
  for (int k = 0; k < 6; ++k) {
    Line e{};
    e[k] = 1;
    all.push_back(e);
  }
  EXPECT_TRUE(polar_subspace(all).empty());
}

TEST(PencilVsQuadric, Examples) {
  auto h = pencil_vs_quadric(ln(1, 0, 0, 0, 0, 0), ln(0, 0, 0, 1, 0, 0));
  EXPECT_EQ(h.kind, PencilKind::Hyperbolic);
  ASSERT_EQ(h.rational_lines.size(), 2u);
  for (const auto& l : h.rational_lines)
    EXPECT_TRUE(l == ln(1, 0, 0, 0, 0, 0) || l == ln(0, 0, 0, 1, 0, 0)) << vec_str(l);

  EXPECT_EQ(pencil_vs_quadric(ln(1, 0, 0, 0, 0, 0), ln(0, 1, 0, 0, 0, 0)).kind, PencilKind::Degenerate);

  auto e = pencil_vs_quadric(ln(1, 0, 0, 1, 0, 0), ln(0, 1, 0, 0, 1, 0));
  EXPECT_EQ(e.kind, PencilKind::Elliptic);
  EXPECT_EQ(e.d, -1);
  ASSERT_EQ(e.lines.size(), 2u);
  for (const auto& l : e.lines) EXPECT_TRUE(is_zero(klein_form(l)));
  EXPECT_EQ(e.lines[0][1], e.lines[1][1].conj());

  // tangent pencil: v1 on the quadric, v2 with pairing zero against it
  auto p = pencil_vs_quadric(ln(1, 0, 0, 0, 0, 0), ln(0, 1, 0, 0, 1, 0));
  EXPECT_EQ(p.kind, PencilKind::Parabolic);
  ASSERT_EQ(p.rational_lines.size(), 1u);
  EXPECT_EQ(p.rational_lines[0], ln(1, 0, 0, 0, 0, 0));
}

TEST(PlueckerProperty, PointPairsLieOnQuadric) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    Pt a = rand_pt(rng), b = rand_pt(rng);
    if (proportional(a, b)) continue;
    EXPECT_TRUE(is_zero(klein_form(line_from_points(a, b))));
  }
}

TEST(PlueckerProperty, PlanesAgreeWithPoints) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    Pt al = rand_pt(rng), be = rand_pt(rng);
    if (proportional(al, be)) continue;
    auto ns = nullspace(Matrix<Rat>{{al.begin(), al.end()}, {be.begin(), be.end()}});
    ASSERT_EQ(ns.size(), 2u);
    Pt p, q;
    std::copy(ns[0].begin(), ns[0].end(), p.begin());
    std::copy(ns[1].begin(), ns[1].end(), q.begin());
    EXPECT_EQ(normalize(line_from_planes(al, be)), normalize(line_from_points(p, q)));
  }
}

TEST(PlueckerProperty, IncidenceIffCoplanar) {
  std::mt19937_64 rng(3);
  int coplanar = 0;
  for (int i = 0; i < 500; ++i) {
    Pt a = rand_pt(rng), b = rand_pt(rng), c = rand_pt(rng), d = rand_pt(rng);
    if (i % 2 == 0) {
      // force coplanarity: d in span(a, b, c)
      Rat x = rand_int(rng, -3, 3), y = rand_int(rng, -3, 3), z = rand_int(rng, -3, 3);
      for (int k = 0; k < 4; ++k) d[k] = x * a[k] + y * b[k] + z * c[k];
    }
    if (proportional(a, b) || is_zero_vec(d) || proportional(c, d)) continue;
    bool meet = is_zero(klein_pairing(line_from_points(a, b), line_from_points(c, d)));
    bool flat = is_zero(det4(a, b, c, d));
    coplanar += flat;
    EXPECT_EQ(meet, flat);
  }
  EXPECT_GT(coplanar, 100);
}

TEST(PlueckerProperty, ContractionLiesOnLineAndPlane) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    Pt a = rand_pt(rng), b = rand_pt(rng), g = rand_pt(rng);
    if (proportional(a, b)) continue;
    Line l = line_from_points(a, b);
    Pt p = contract(l, g);
    if (is_zero_vec(p)) continue;
    EXPECT_TRUE(point_on_line(p, l));
    Rat gp = 0;
    for (int k = 0; k < 4; ++k) gp += g[k] * p[k];
    EXPECT_TRUE(is_zero(gp));
    // the dual description: p lies in every plane through l
    for (const auto& pl : planes_through(l)) {
      Rat v = 0;
      for (int k = 0; k < 4; ++k) v += pl[k] * p[k];
      EXPECT_TRUE(is_zero(v));
    }
  }
}

TEST(PlueckerProperty, PolarIsAnInvolution) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    int n = rand_int(rng, 1, 5);
    std::vector<Line> vs;
    for (int k = 0; k < n; ++k) {
      Line v;
      for (auto& x : v) x = rand_int(rng, -4, 4);
      vs.push_back(v);
    }
    auto pp = polar_subspace(polar_subspace(vs));
    std::size_t r = dim(vs);
    EXPECT_EQ(dim(pp), r);
    auto both = pp;
    both.insert(both.end(), vs.begin(), vs.end());
    EXPECT_EQ(dim(both), r);
    EXPECT_EQ(polar_subspace(vs).size() + r, 6u);
  }
}

TEST(PlueckerProperty, MeetPointOfMeetingLines) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    Pt o = rand_pt(rng), a = rand_pt(rng), b = rand_pt(rng);
    if (proportional(o, a) || proportional(o, b)) continue;
    Line l = line_from_points(o, a), m = line_from_points(o, b);
    if (proportional(l, m)) continue;
    auto p = meet_point(l, m);
    ASSERT_TRUE(p.has_value());
    EXPECT_TRUE(proportional(*p, o));
  }
}

TEST(Tensor, SplitAndCompleteRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Lin<Rat> a{rand_rat(rng), rand_rat(rng)}, b{rand_rat(rng), rand_rat(rng)}, c{rand_rat(rng), rand_rat(rng)};
    if (is_zero_vec(a) || is_zero_vec(b) || is_zero_vec(c)) continue;
    Tri<Rat> t = outer(a, b, c);
    auto s = tri_split(t);
    EXPECT_EQ(outer(s.a, s.b, s.c), t);
    EXPECT_TRUE(lin_proportional(s.a, a));
    EXPECT_EQ(outer(a, b, tri_complete(t, 2, a, b)), t);
    EXPECT_EQ(outer(tri_complete(t, 0, b, c), b, c), t);
  }
  Tri<Rat> generic = tri_zero<Rat>();
  generic[0] = 1;
  generic[7] = 1;
  EXPECT_FALSE(is_rank_one(generic));
  EXPECT_EQ(kind_of([&] { tri_split(generic); }), ErrorKind::Indecomposable);
}

TEST(Tensor, ChangeBasisRecoversProductCoordinates) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    Matrix<Rat> M[3];
    for (auto& m : M)
      do {
        m = {{rand_int(rng, -3, 3), rand_int(rng, -3, 3)}, {rand_int(rng, -3, 3), rand_int(rng, -3, 3)}};
      } while (is_zero(det(m)));
    Tri<Rat> coords;
    for (auto& x : coords) x = rand_int(rng, -5, 5);
    Tri<Rat> t = tri_zero<Rat>();
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        for (int w = 0; w < 2; ++w) {
          Lin<Rat> a{M[0][p][0], M[0][p][1]}, b{M[1][q][0], M[1][q][1]}, c{M[2][w][0], M[2][w][1]};
          t = t + scaled(outer(a, b, c), coords[tri_index(p, q, w)]);
        }
    EXPECT_EQ(change_basis(t, M[0], M[1], M[2]), coords);
  }
}
