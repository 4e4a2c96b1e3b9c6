#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "linecong/construct.hpp"
#include "linecong/maps.hpp"
#include "linecong/special_planes.hpp"
#include "support.hpp"

using namespace linecong;

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

ProjVec pv(long a, long b) { return {Rat(a), Rat(b)}; }
Pt pt(long a, long b, long c, long d) { return {Rat(a), Rat(b), Rat(c), Rat(d)}; }

std::array<MPoly, 2> pair(const char* a, const char* b) {
  return {parse_poly(a, Signature::points()), parse_poly(b, Signature::points())};
}

InverseMap example_inverse() {
  InverseMap inv;
  inv.comp[0] = pair("x2 - x3", "x3");
  inv.comp[1] = pair("x0*x2 - x1*x2 + x0*x3 + x1*x3", "x1*x2 - x0*x3");
  inv.comp[2] = pair("x0*x2 - x1*x2 - x2^2 + x0*x3 + x1*x3 - x3^2", "x1*x2 - x0*x3");
  return inv;
}

InverseMap tensor_inverse() {
  InverseMap inv;
  inv.comp[0] = pair("x0", "x1");
  inv.comp[1] = pair("x0", "x2");
  inv.comp[2] = pair("x0", "x3");
  return inv;
}

/// A map of each type, for the property suites.
std::vector<std::pair<TrilinearMap, std::array<int, 3>>> typed_maps() {
  std::mt19937_64 rng(2024);
  return {{tensor_map(), {1, 1, 1}},       {random_111(rng, 1), {1, 1, 1}}, {random_112(rng), {1, 1, 2}},
          {example_map(), {1, 2, 2}},      {random_122(rng, false), {1, 2, 2}},
          {random_122(rng, true), {1, 2, 2}}, {random_222(rng), {2, 2, 2}}};
}

}  // namespace

TEST(EvalMap, Examples) {
  // f0 = 1, f1 = 0, f2 = 1, f3 = 0 by direct substitution
  EXPECT_EQ(eval_map(example_map(), {pv(1, 0), pv(1, 0), pv(0, 1)}), pt(1, 0, 1, 0));
  EXPECT_EQ(kind_of([] { eval_map(example_map(), {pv(2, 3), pv(1, 0), pv(1, 0)}); }), ErrorKind::BasePoint);
  EXPECT_EQ(eval_map(tensor_map(), {pv(1, 1), pv(1, 1), pv(1, 1)}), pt(1, 1, 1, 1));
  EXPECT_EQ(kind_of([] { eval_map(tensor_map(), {pv(0, 0), pv(1, 1), pv(1, 1)}); }), ErrorKind::ZeroVector);
}

TEST(MakeMap, RejectsWrongDegreeAndZero) {
  EXPECT_EQ(kind_of([] { parse_map({"s0*t0", "s0*t0*u0", "s1*t0*u0", "s0*t1*u1"}); }), ErrorKind::NotHomogeneous);
  EXPECT_EQ(kind_of([] { parse_map({"0", "0", "0", "0"}); }), ErrorKind::AllZero);
  EXPECT_EQ(kind_of([] { parse_map({"x0*s0*t0*u0", "s0*t0*u0", "s1*t0*u0", "s0*t1*u1"}); }),
            ErrorKind::UnknownVariable);
}

TEST(SyzygySpace, Examples) {
  auto sy = syzygy_space(tensor_map(), unit_degree(0));
  ASSERT_EQ(sy.size(), 1u);
  MPoly expected = parse_poly("s0*x1 - s1*x0");
  MPoly form = sy[0].as_form();
  EXPECT_TRUE(form == expected || form == -expected) << form.str();

  auto alpha = syzygy_space(example_map(), unit_degree(0));
  ASSERT_EQ(alpha.size(), 1u);
  EXPECT_TRUE(alpha[0].pairing(example_map()).is_zero());
  EXPECT_TRUE(syzygy_space(example_map(), unit_degree(1)).empty());

  std::mt19937_64 rng(11);
  std::array<MPoly, 4> f;
  for (auto& p : f) p = linecong::testing::rand_poly(rng, kTrilinear, 1.0);
  EXPECT_TRUE(syzygy_space(make_map(f), unit_degree(0)).empty());
  EXPECT_EQ(kind_of([] { syzygy_space(tensor_map(), {3, 0, 0, 0}); }), ErrorKind::WrongDegree);
}

TEST(SyzygySpace, PairingVanishesIdentically) {
  const std::vector<MultiDeg> degs{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 0, 0},
                                   {0, 1, 1, 0}, {1, 0, 1, 0}, {0, 2, 0, 0}, {1, 1, 1, 0}};
  for (const auto& [m, type] : typed_maps()) {
    for (const auto& d : degs) {
      auto sy = syzygy_space(m, d);
      for (const auto& s : sy) {
        EXPECT_EQ(s.deg, d);
        EXPECT_TRUE(s.pairing(m).is_zero());
      }
      // independence: the forms have full rank as coefficient vectors
      if (sy.size() > 1) {
        std::map<Exponent, std::size_t, std::greater<Exponent>> col;
        std::vector<MPoly> forms;
        for (const auto& s : sy) forms.push_back(s.as_form());
        for (const auto& f : forms)
          for (const auto& [e, c] : f.terms()) col.emplace(e, col.size());
        Matrix<Rat> M;
        for (const auto& f : forms) {
          std::vector<Rat> row(col.size(), Rat(0));
          for (const auto& [e, c] : f.terms()) row[col.at(e)] = c;
          M.push_back(row);
        }
        EXPECT_EQ(rank(M), sy.size());
      }
    }
  }
}

TEST(DetectType, Examples) {
  TypeInfo t = detect_type(tensor_map());
  EXPECT_EQ(t.type, (std::array<int, 3>{1, 1, 1}));

  TypeInfo e = detect_type(example_map());
  EXPECT_EQ(e.type, (std::array<int, 3>{1, 2, 2}));
  EXPECT_EQ(e.degrees, (std::array<int, 3>{1, 2, 2}));
  EXPECT_EQ(e.perm[0], 0);

  // common factor s0: the image is a surface
  EXPECT_EQ(kind_of([] { detect_type(parse_map({"s0*t0*u0", "s0*t0*u1", "s0*t1*u0", "s0*t1*u1"})); }),
            ErrorKind::NotBirational);
  EXPECT_EQ(kind_of([] { detect_type(two_to_one_map()); }), ErrorKind::NotBirational);
}

TEST(DetectType, PermutationSortsDegrees) {
  // moving the degree-1 factor of the Example to the last slot
  TrilinearMap m = permute_factors(example_map(), {1, 2, 0});
  TypeInfo t = detect_type(m);
  EXPECT_EQ(t.degrees, (std::array<int, 3>{2, 2, 1}));
  EXPECT_EQ(t.type, (std::array<int, 3>{1, 2, 2}));
  EXPECT_EQ(t.perm[0], 2);
}

TEST(DetectType, InvariantUnderConjugation) {
  std::mt19937_64 rng(77);
  for (const auto& [m, type] : typed_maps()) {
    for (int k = 0; k < 20; ++k) {
      TrilinearMap c = conjugate(m, random_conjugation(rng));
      EXPECT_EQ(detect_type(c).type, type);
    }
  }
}

TEST(Constructions, HaveTheirTypes) {
  std::mt19937_64 rng(5);
  for (int cls = 1; cls <= 4; ++cls)
    EXPECT_EQ(detect_type(random_111(rng, cls)).type, (std::array<int, 3>{1, 1, 1})) << cls;
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(detect_type(random_112(rng)).type, (std::array<int, 3>{1, 1, 2}));
    EXPECT_EQ(detect_type(random_122(rng, false)).type, (std::array<int, 3>{1, 2, 2}));
    EXPECT_EQ(detect_type(random_122(rng, true)).type, (std::array<int, 3>{1, 2, 2}));
    EXPECT_EQ(detect_type(random_222(rng)).type, (std::array<int, 3>{2, 2, 2}));
  }
}

TEST(Inverse, ExampleMatchesUpToReparameterization) {
  TypeInfo t = detect_type(example_map());
  InverseMap ref = example_inverse();
  for (int k = 0; k < 3; ++k) {
    auto M = pair_equivalence(ref.comp[k], t.inverse.comp[k]);
    ASSERT_TRUE(M.has_value()) << k << ": " << t.inverse.comp[k][0].str() << " : " << t.inverse.comp[k][1].str();
  }
  EXPECT_EQ(t.inverse.degrees(), (std::array<int, 3>{1, 2, 2}));
}

TEST(Inverse, TensorMap) {
  TypeInfo t = detect_type(tensor_map());
  InverseMap ref = tensor_inverse();
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(pair_equivalence(ref.comp[k], t.inverse.comp[k]).has_value()) << k;
}

TEST(PairEquivalence, RecoversTheMatrix) {
  auto ours = pair("x0 + x1", "x2");
  auto ref = pair("2*x0 + 2*x1 - x2", "x0 + x1 + 3*x2");
  auto M = pair_equivalence(ref, ours);
  ASSERT_TRUE(M.has_value());
  EXPECT_EQ(*M, (Matrix<Rat>{{2, -1}, {1, 3}}));
  EXPECT_FALSE(pair_equivalence(pair("x3", "x0"), ours).has_value());
  EXPECT_FALSE(pair_equivalence(pair("x0 + x1", "x0 + x1"), ours).has_value());
}

TEST(VerifyBirational, Examples) {
  auto rep = verify_birational(example_map(), example_inverse(), 100, 42);
  EXPECT_EQ(rep.samples, 100);
  EXPECT_EQ(rep.passed, 100);
  EXPECT_TRUE(rep.ok());

  InverseMap wrong = example_inverse();
  std::swap(wrong.comp[1], wrong.comp[2]);
  auto bad = verify_birational(example_map(), wrong, 100, 42);
  EXPECT_FALSE(bad.ok());
  EXPECT_FALSE(bad.failures.empty());

  EXPECT_TRUE(verify_birational(tensor_map(), tensor_inverse(), 100, 3).ok());
  EXPECT_EQ(kind_of([] { verify_birational(tensor_map(), tensor_inverse(), 0, 3); }), ErrorKind::ZeroInput);
}

TEST(VerifyBirational, ComputedInversesPass) {
  for (const auto& [m, type] : typed_maps()) EXPECT_TRUE(verify_birational(m, detect_type(m).inverse, 40, 9).ok());
}

TEST(VerifyBirational, DeterministicForSeed) {
  InverseMap wrong = example_inverse();
  std::swap(wrong.comp[1], wrong.comp[2]);
  auto a = verify_birational(example_map(), wrong, 30, 8), b = verify_birational(example_map(), wrong, 30, 8);
  EXPECT_EQ(a.failures, b.failures);
}

TEST(FiberSolve, Examples) {
  Param p{pv(1, 2), pv(1, 3), pv(1, 5)};
  Fiber f = fiber_solve(example_map(), eval_map(example_map(), p));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f.rational[0], p);

  Fiber g = fiber_solve(tensor_map(), pt(1, 1, 1, 1));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.rational[0], (Param{pv(1, 1), pv(1, 1), pv(1, 1)}));

  Fiber h = fiber_solve(two_to_one_map(), eval_map(two_to_one_map(), {pv(1, 2), pv(3, -1), pv(2, 5)}));
  EXPECT_GE(h.size(), 2u);
}

TEST(FiberSolve, IgnoresBaseCurve) {
  // s = (1:0), u = (1:0) is a base curve; its t-line must not add solutions
  TrilinearMap m = parse_map({"-s1*t0*u1", "-2*s0*t1*u1 + s1*t0*u0", "s0*t0*u1 + s1*t1*u0",
                              "-2*s0*t0*u1 - 2*s1*t1*u0 + 2*s1*t1*u1"});
  Param p{pv(7, 9), pv(-9, 8), pv(-4, -7)};
  Fiber f = fiber_solve(m, eval_map(m, p));
  ASSERT_EQ(f.size(), 1u);
  for (int j = 0; j < 3; ++j) EXPECT_TRUE(proportional(f.rational[0][j], p[j]));
}

TEST(FiberSolve, AgreesWithInverse) {
  std::mt19937_64 rng(31);
  for (const auto& [m, type] : typed_maps()) {
    TypeInfo t = detect_type(m);
    for (int k = 0; k < 20; ++k) {
      Param p = random_param(rng);
      Pt x = eval_raw(m, p);
      bool generic = !is_zero_vec(x);
      for (int j = 0; j < 3 && generic; ++j) generic = !is_zero_vec(t.inverse.apply(j, x));
      if (!generic) continue;
      Fiber f = fiber_solve(m, x);
      ASSERT_EQ(f.size(), 1u) << param_str(p);
      for (int j = 0; j < 3; ++j) {
        EXPECT_TRUE(proportional(t.inverse.apply(j, x), f.rational[0][j]));
        EXPECT_TRUE(proportional(f.rational[0][j], p[j]));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Special planes

namespace {

Ext pairing_at(const Pt4<Ext>& L, const TrilinearMap& m, const Param& p) {
  Pt x = eval_raw(m, p);
  Ext v(0);
  for (int i = 0; i < 4; ++i) v = v + L[i] * Ext(x[i]);
  return v;
}

Ext tensor_at(const Tri<Ext>& T, const Param& p, const std::array<int, 3>& perm) {
  Ext v(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        v = v + T[tri_index(i, j, k)] * Ext(p[perm[0]][i] * p[perm[1]][j] * p[perm[2]][k]);
  return v;
}

Line6<Ext> ext6(long a, long b, long c, long d, long e, long f) {
  return {Ext(a), Ext(b), Ext(c), Ext(d), Ext(e), Ext(f)};
}

}  // namespace

TEST(SpecialPlanes, BracketsMatchNormalFormPointwise) {
  std::mt19937_64 rng(77);
  auto maps = typed_maps();
  Conjugation c = random_conjugation(rng);
  maps.push_back({conjugate(example_map(), c), {1, 2, 2}});
  maps.push_back({conjugate(maps[6].first, c), {2, 2, 2}});
  for (const auto& [m, type] : maps) {
    auto s = special_planes(m);
    EXPECT_EQ(s.type, type);
    for (const auto& [name, T] : expected_brackets(s))
      for (int n = 0; n < 5; ++n) {
        Param p = random_param(rng);
        EXPECT_EQ(pairing_at(s.plane(name), m, p), tensor_at(T, p, s.perm)) << name;
      }
  }
}

TEST(SpecialPlanes, IndependenceConditionsHoldOnGeneralFixtures) {
  auto maps = typed_maps();
  for (std::size_t i = 1; i < maps.size(); ++i) {
    auto s = special_planes(maps[i].first);
    EXPECT_TRUE(s.general) << i;
    EXPECT_TRUE(s.violations.empty()) << i;
  }
  // A1 = B1 = C1 = x0 for the tensor map
  auto t = special_planes(tensor_map());
  EXPECT_FALSE(t.general);
}

TEST(SpecialPlanes, TensorMapLines) {
  // a = {x0 = x1 = 0} = e2^e3, b = e1^e3 up to sign, c = e1^e2
  auto L = covector_lines(special_planes(tensor_map()));
  EXPECT_EQ(normalize(rational_part(L["a"])), (Line{0, 0, 0, 1, 0, 0}));
  EXPECT_EQ(normalize(rational_part(L["b"])), (Line{0, 0, 0, 0, 1, 0}));
  EXPECT_EQ(normalize(rational_part(L["c"])), (Line{0, 0, 0, 0, 0, 1}));
}

TEST(SpecialPlanes, ExampleLines) {
  auto s = special_planes(example_map());
  EXPECT_EQ(s.d, Rat(-1));
  auto L = covector_lines(s);
  EXPECT_EQ(L["a"], ext6(1, 0, 0, 0, 0, 0));
  EXPECT_EQ(L["b"], ext6(0, 0, 0, 1, 0, 0));
  EXPECT_EQ(L["c"], ext6(1, 0, 1, 1, 0, -1));
  // x, y: the planes i*x0 - x1 and i*x2 - x3 and their conjugates
  Ext i = ext_unit(Rat(-1));
  Pt4<Ext> p{i, Ext(-1), Ext(0), Ext(0)}, q{Ext(0), Ext(0), i, Ext(-1)};
  Line6<Ext> x = normalize_ext(line_from_planes(p, q));
  Line6<Ext> xc;
  for (int k = 0; k < 6; ++k) xc[k] = x[k].conj();
  EXPECT_TRUE((L["x"] == x && L["y"] == xc) || (L["x"] == xc && L["y"] == x));
}

TEST(SpecialPlanes, NonBirationalHasNone) {
  EXPECT_EQ(kind_of([] { special_planes(two_to_one_map()); }), ErrorKind::NoSpecialPlanes);
}
