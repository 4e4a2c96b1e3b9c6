#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "linecong/classify.hpp"
#include "linecong/construct.hpp"
#include "support.hpp"

using namespace linecong;
using linecong::testing::rand_vec;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Io;
}

Line ln(long a, long b, long c, long d, long e, long f) { return {Rat(a), Rat(b), Rat(c), Rat(d), Rat(e), Rat(f)}; }
Pt pt(long a, long b, long c, long d) { return {Rat(a), Rat(b), Rat(c), Rat(d)}; }

/// Member line of family k through two evaluations of the map: the oracle for the wedge route.
Line member_oracle(const TrilinearMap& m, int k, const ProjVec& p, const ProjVec& q) {
  auto b = CongruenceParam{k, {}, {}}.blocks();
  Param a, c;
  a[b[0]] = c[b[0]] = p;
  a[b[1]] = c[b[1]] = q;
  a[k] = {Rat(1), Rat(0)};
  c[k] = {Rat(0), Rat(1)};
  Pt x = eval_raw(m, a), y = eval_raw(m, c);
  if (is_zero_vec(x) || is_zero_vec(y) || proportional(x, y)) return Line{};
  return line_from_points(x, y);
}

std::vector<TrilinearMap> sample_maps() {
  std::mt19937_64 rng(77);
  return {tensor_map(),      example_map(),           random_111(rng, 1), random_111(rng, 3),
          random_112(rng),   random_122(rng, false),  random_122(rng, true), random_222(rng)};
}

MPoly params(const char* s) { return parse_poly(s, Signature::params()); }

}  // namespace

TEST(Biquadratic, MatchesPointwiseJoins) {
  std::mt19937_64 rng(5);
  for (const auto& m : sample_maps())
    for (int k = 0; k < 3; ++k) {
      CongruenceParam C = biquadratic_param(m, k);
      for (int i = 0; i < 15; ++i) {
        ProjVec p = rand_vec(rng, 2), q = rand_vec(rng, 2);
        Line want = member_oracle(m, k, p, q), got = C.at(p, q);
        if (is_zero_vec(want)) continue;
        EXPECT_TRUE(proportional(want, got)) << vec_str(want) << " vs " << vec_str(got);
      }
    }
}

TEST(Biquadratic, KleinFormVanishesIdentically) {
  for (const auto& m : sample_maps())
    for (int k = 0; k < 3; ++k) EXPECT_TRUE(klein_form_poly(biquadratic_param(m, k)).is_zero());
}

TEST(Biquadratic, Bidegrees) {
  // the wedge of the two slices has bidegree (2,2); content removal lowers it when a factor splits off
  const TrilinearMap m = example_map();
  EXPECT_EQ(biquadratic_param(m, 0).bidegree, (std::array<int, 2>{2, 2}));
  EXPECT_EQ(biquadratic_param(m, 1).bidegree, (std::array<int, 2>{2, 1}));
  EXPECT_EQ(biquadratic_param(m, 2).bidegree, (std::array<int, 2>{2, 1}));
  for (int k = 0; k < 3; ++k) EXPECT_EQ(biquadratic_param(tensor_map(), k).bidegree, (std::array<int, 2>{1, 1}));
}

TEST(Syzygy, AgreesWithBiquadratic) {
  int compared = 0;
  for (const auto& m : sample_maps())
    for (int k = 0; k < 3; ++k) {
      CongruenceParam B = biquadratic_param(m, k);
      try {
        CongruenceParam S = syzygy_param(m, k);
        EXPECT_TRUE(params_agree(B, S));
        ++compared;
      } catch (const Error& e) {
        EXPECT_TRUE(e.kind() == ErrorKind::WrongDegree || e.kind() == ErrorKind::DependentSyzygies) << e.what();
      }
    }
  EXPECT_GE(compared, 12);
}

TEST(Syzygy, DisagreementIsDetected) {
  const TrilinearMap m = example_map();
  EXPECT_FALSE(params_agree(biquadratic_param(m, 1), biquadratic_param(m, 2)));
}

TEST(Span, Dimensions) {
  const TrilinearMap ex = example_map();
  for (int k = 0; k < 3; ++k) EXPECT_EQ(span(biquadratic_param(ex, k)).size(), 4u);
  for (int k = 0; k < 3; ++k) {
    auto basis = span(biquadratic_param(tensor_map(), k));
    EXPECT_EQ(basis.size(), 3u);
    EXPECT_TRUE(totally_isotropic(basis));
    EXPECT_TRUE(star_center(basis).has_value());
  }
}

TEST(FocalLines, ExampleT) {
  auto pc = focal_lines_linear(biquadratic_param(example_map(), 1));
  EXPECT_EQ(pc.kind, PencilKind::Hyperbolic);
  ASSERT_EQ(pc.rational_lines.size(), 2u);
  std::set<Line> got(pc.rational_lines.begin(), pc.rational_lines.end());
  EXPECT_EQ(got, (std::set<Line>{ln(1, 0, 0, 0, 0, 0), ln(1, 0, 1, 1, 0, -1)}));
}

TEST(FocalLines, ExampleU) {
  auto pc = focal_lines_linear(biquadratic_param(example_map(), 2));
  EXPECT_EQ(pc.kind, PencilKind::Hyperbolic);
  std::set<Line> got(pc.rational_lines.begin(), pc.rational_lines.end());
  EXPECT_EQ(got, (std::set<Line>{ln(1, 0, 0, 0, 0, 0), ln(0, 0, 0, 1, 0, 0)}));
}

TEST(FocalLines, ExampleSIsElliptic) {
  auto pc = focal_lines_linear(biquadratic_param(example_map(), 0));
  EXPECT_EQ(pc.kind, PencilKind::Elliptic);
  EXPECT_LT(pc.discriminant, 0);
  EXPECT_EQ(pc.d, -1);
  ASSERT_EQ(pc.lines.size(), 2u);
  // conjugate pair: the line through the planes i*x0 - x1 and i*x2 - x3, and its conjugate
  const Ext i = ext_unit(Rat(-1));
  Line6<Ext> want = normalize_ext(line_from_planes<Ext>({i, Ext(-1), Ext(0), Ext(0)}, {Ext(0), Ext(0), i, Ext(-1)}));
  Line6<Ext> bar;
  for (int j = 0; j < 6; ++j) bar[j] = want[j].conj();
  bar = normalize_ext(bar);
  EXPECT_TRUE((pc.lines[0] == want && pc.lines[1] == bar) || (pc.lines[0] == bar && pc.lines[1] == want));
}

TEST(FocalLines, MembersMeetFocalLinesPointwise) {
  std::mt19937_64 rng(8);
  const TrilinearMap m = example_map();
  for (int k = 1; k < 3; ++k) {
    auto C = biquadratic_param(m, k);
    auto pc = focal_lines_linear(C);
    for (int i = 0; i < 20; ++i) {
      Line l = member_oracle(m, k, rand_vec(rng, 2), rand_vec(rng, 2));
      for (const auto& f : pc.rational_lines) EXPECT_EQ(klein_pairing(l, f), 0);
    }
  }
}

TEST(FocalLines, StarIsDegenerate) {
  EXPECT_EQ(focal_lines_linear(biquadratic_param(tensor_map(), 0)).kind, PencilKind::Degenerate);
}

TEST(FocalPoint, TensorMap) {
  const TrilinearMap m = tensor_map();
  const Pt want[3] = {pt(0, 1, 0, 0), pt(0, 0, 1, 0), pt(0, 0, 0, 1)};
  std::mt19937_64 rng(3);
  for (int k = 0; k < 3; ++k) {
    auto C = biquadratic_param(m, k);
    Pt p = focal_point(C);
    EXPECT_TRUE(proportional(p, want[k])) << vec_str(p);
    for (int i = 0; i < 10; ++i) {
      Line l = member_oracle(m, k, rand_vec(rng, 2), rand_vec(rng, 2));
      if (!is_zero_vec(l)) { EXPECT_TRUE(point_on_line(want[k], l)); }
    }
    FocalVariety f;
    f.kind = FocalKind::FocalPoint;
    f.point = p;
    EXPECT_TRUE(incidence_certificate(C, f).ok);
  }
}

TEST(FocalPoint, RejectsNonDegenerate) {
  EXPECT_EQ(kind_of([] { focal_point(biquadratic_param(example_map(), 1)); }), ErrorKind::NotDegenerate);
}

TEST(FocalPoint, StarOfLinesThroughAPoint) {
  // lines joining (0:0:0:1) to (t0u0 : t0u1 : t1u0 : 0)
  std::array<MPoly, 6> c{MPoly::zero({0, 1, 1, 0}), MPoly::zero({0, 1, 1, 0}), params("-t0*u0"),
                         params("-t1*u0"), params("t0*u1"), MPoly::zero({0, 1, 1, 0})};
  auto C = detail::make_param(0, c);
  EXPECT_TRUE(proportional(focal_point(C), pt(0, 0, 0, 1)));
}

TEST(Planar, LinesInAPlaneAreRejected) {
  // lines joining (t0 : t1 : 0 : 0) and (u0 : 0 : u1 : 0), all inside x3 = 0
  std::array<MPoly, 6> c{params("-t1*u0"), params("t0*u1"), MPoly::zero({0, 1, 1, 0}), MPoly::zero({0, 1, 1, 0}),
                         MPoly::zero({0, 1, 1, 0}), params("t1*u1")};
  auto C = detail::make_param(0, c);
  EXPECT_TRUE(klein_form_poly(C).is_zero());
  EXPECT_EQ(kind_of([&] { focal_lines_linear(C); }), ErrorKind::PlanarCongruence);
  EXPECT_EQ(kind_of([&] { focal_point(C); }), ErrorKind::PlanarCongruence);
}

TEST(Certificate, TrueLinesAreZero) {
  auto C = biquadratic_param(example_map(), 1);
  EXPECT_TRUE(incidence_certificate(C, FocalVariety::real_line(ln(1, 0, 0, 0, 0, 0))).ok);
  EXPECT_TRUE(incidence_certificate(C, FocalVariety::real_line(ln(1, 0, 1, 1, 0, -1))).ok);
}

TEST(Certificate, WrongLinesGiveValidWitnesses) {
  std::mt19937_64 rng(12);
  const TrilinearMap m = example_map();
  for (int k = 0; k < 3; ++k) {
    auto C = biquadratic_param(m, k);
    for (int i = 0; i < 10; ++i) {
      // random line: join of two random points
      Line l;
      do {
        auto a = rand_vec(rng, 4), b = rand_vec(rng, 4);
        l = line_from_points(Pt{a[0], a[1], a[2], a[3]}, Pt{b[0], b[1], b[2], b[3]});
      } while (is_zero_vec(l));
      Certificate c = incidence_certificate(C, FocalVariety::real_line(l));
      ASSERT_FALSE(c.ok);
      ASSERT_TRUE(c.witness.has_value());
      EXPECT_NE(klein_pairing(C.at(c.witness->first, c.witness->second), l), 0);
    }
  }
}

TEST(Certificate, WrongPointGivesWitness) {
  auto C = biquadratic_param(tensor_map(), 0);
  FocalVariety f;
  f.kind = FocalKind::FocalPoint;
  f.point = pt(1, 0, 0, 0);
  Certificate c = incidence_certificate(C, f);
  EXPECT_FALSE(c.ok);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_FALSE(point_on_line(f.point, C.at(c.witness->first, c.witness->second)));
}

TEST(Conic, SampledAgreesWithSpecialPlanes) {
  std::mt19937_64 rng(31);
  int compared = 0;
  for (const auto& m : {random_112(rng), random_112(rng), random_222(rng), random_222(rng)}) {
    TypeInfo info = detect_type(m);
    SpecialPlaneData data = special_planes(m, info);
    if (!data.rational()) continue;
    for (int k = 0; k < 3; ++k) {
      if (info.type == std::array<int, 3>{1, 1, 2} && k == 2) continue;
      auto C = biquadratic_param(m, info.perm[k]);
      auto l = polar_point(C);
      ASSERT_TRUE(l.has_value());
      auto sampled = sampled_conic(C, *l);
      ASSERT_TRUE(sampled.has_value());
      FocalVariety ref = focal_conic(data, k);
      EXPECT_TRUE(proportional(sampled->plane, ref.plane));
      // same quadric on the plane: compare values at points of the plane
      auto basis = nullspace(Matrix<Rat>{std::vector<Rat>(ref.plane.begin(), ref.plane.end())});
      ProjVec a, b;
      for (int i = 0; i < 12; ++i) {
        auto w = rand_vec(rng, 3);
        Pt x{};
        for (int j = 0; j < 3; ++j)
          for (int r = 0; r < 4; ++r) x[r] += w[j] * basis[j][r];
        a.push_back(quadric_value(sampled->form, x));
        b.push_back(quadric_value(ref.form, x));
      }
      EXPECT_TRUE(proportional(a, b));
      EXPECT_TRUE(incidence_certificate(C, *sampled).ok);
      ++compared;
    }
  }
  EXPECT_GE(compared, 4);
}

TEST(Conic, MembersMeetTheConic) {
  std::mt19937_64 rng(4);
  const TrilinearMap m = random_222(rng);
  for (int k = 0; k < 3; ++k) {
    auto C = biquadratic_param(m, k);
    auto cls = classify_family(C, nullptr, k);
    ASSERT_EQ(cls.label, CongruenceLabel::B_quadratic);
    const FocalVariety* c = cls.find(FocalKind::Conic);
    ASSERT_NE(c, nullptr);
    for (int i = 0; i < 10; ++i) {
      Line l = member_oracle(m, k, rand_vec(rng, 2), rand_vec(rng, 2));
      Pt x = contract(l, c->plane);
      if (is_zero_vec(x)) continue;
      EXPECT_EQ(quadric_value(c->form, x), 0);
    }
  }
}
