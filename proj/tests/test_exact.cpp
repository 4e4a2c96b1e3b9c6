#include <gtest/gtest.h>

#include <random>

#include "linecong/exact.hpp"
#include "support.hpp"

using namespace linecong;
using linecong::testing::rand_rat;
using linecong::testing::rand_vec;

namespace {

ProjVec V(std::initializer_list<Rat> xs) { return ProjVec(xs); }

Ext eval_quad(const Rat& A, const Rat& B, const Rat& C, const std::array<Ext, 2>& r) {
  return Ext(A) * r[0] * r[0] + Ext(B) * r[0] * r[1] + Ext(C) * r[1] * r[1];
}

}  // namespace

TEST(Normalize, DividesByGcd) { EXPECT_EQ(normalize(V({2, 4, 0, 6})), V({1, 2, 0, 3})); }

TEST(Normalize, MakesLeadingEntryPositive) { EXPECT_EQ(normalize(V({-1, 0, 0, 0})), V({1, 0, 0, 0})); }

TEST(Normalize, ClearsDenominators) {
  EXPECT_EQ(normalize(V({make_rat(1, 2), make_rat(1, 3), 0, 0})), V({3, 2, 0, 0}));
}

TEST(Normalize, RejectsZeroVector) {
  try {
    normalize(V({0, 0, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroVector);
  }
}

TEST(Normalize, IdempotentAndScaleInvariant) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    ProjVec v = rand_vec(rng, 6);
    Rat c = rand_rat(rng);
    if (is_zero(c)) continue;
    ProjVec n = normalize(v);
    EXPECT_EQ(normalize(n), n);
    ProjVec w = v;
    for (auto& x : w) x *= c;
    EXPECT_EQ(normalize(w), n);
  }
}

TEST(QuadRootPair, TwoRealRoots) {
  auto r = quad_root_pair(1, 0, -1);
  EXPECT_EQ(r.kind, RootKind::TwoRealRoots);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_TRUE(r.rational());
  std::vector<ProjVec> got;
  for (auto& p : r.roots) got.push_back(normalize(ProjVec{p[0].a, p[1].a}));
  EXPECT_EQ(got[0], V({1, 1}));
  EXPECT_EQ(got[1], V({1, -1}));
}

TEST(QuadRootPair, ConjugatePair) {
  auto r = quad_root_pair(1, 0, 1);
  EXPECT_EQ(r.kind, RootKind::ConjugatePair);
  EXPECT_EQ(r.d, -1);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_TRUE(is_zero(eval_quad(1, 0, 1, r.roots[0])));
  EXPECT_EQ(r.roots[0][0], r.roots[1][0].conj());
}

TEST(QuadRootPair, DoubleRoot) {
  auto r = quad_root_pair(1, -2, 1);
  EXPECT_EQ(r.kind, RootKind::DoubleRoot);
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_EQ(normalize(ProjVec{r.roots[0][0].a, r.roots[0][1].a}), V({1, 1}));
}

TEST(QuadRootPair, IdenticallyZero) { EXPECT_EQ(quad_root_pair(0, 0, 0).kind, RootKind::IdenticallyZero); }

TEST(QuadRootPair, BranchMatchesDiscriminantAndRootsVanish) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 400; ++it) {
    Rat A = rand_rat(rng), B = rand_rat(rng), C = rand_rat(rng);
    if (it % 7 == 0) A = 0;
    if (it % 11 == 0) B = 2 * A, C = A;  // perfect square
    auto r = quad_root_pair(A, B, C);
    Rat disc = B * B - 4 * A * C;
    if (is_zero(A) && is_zero(B) && is_zero(C)) {
      EXPECT_EQ(r.kind, RootKind::IdenticallyZero);
      continue;
    }
    if (sgn(disc) > 0) { EXPECT_EQ(r.kind, RootKind::TwoRealRoots); }
    if (sgn(disc) < 0) { EXPECT_EQ(r.kind, RootKind::ConjugatePair); }
    if (sgn(disc) == 0) { EXPECT_EQ(r.kind, RootKind::DoubleRoot); }
    for (const auto& root : r.roots) {
      EXPECT_FALSE(is_zero(root[0]) && is_zero(root[1]));
      EXPECT_TRUE(is_zero(eval_quad(A, B, C, root)));
    }
  }
}

TEST(SquareFree, SplitsSquares) {
  auto sf = square_free(make_rat(-72, 5));
  // -72/5 = (6/5)^2 * (-10)
  EXPECT_EQ(sf.k, make_rat(6, 5));
  EXPECT_EQ(sf.d, -10);
}

TEST(Ext, FieldOperations) {
  Ext i = ext_unit(-1);
  EXPECT_EQ(i * i, Ext(-1));
  Ext z(Rat(3), Rat(2), Rat(-1));
  EXPECT_EQ(z * z.inverse(), Ext(1));
  EXPECT_EQ((z * z.conj()).b, 0);
  Ext r2 = ext_unit(2);
  EXPECT_EQ((Ext(1) - r2).sign(), -1);
  EXPECT_EQ((Ext(2) - r2).sign(), 1);
  EXPECT_THROW(r2 + i, Error);
}
