#include <gtest/gtest.h>

#include "vallab/errors.hpp"
#include "vallab/resfield.hpp"

using namespace vallab;

TEST(FpPoly, DivmodRecombines) {
  const FpPoly a(5, {1, 2, 3, 4, 1});
  const FpPoly d(5, {2, 0, 1});
  const auto [qt, r] = a.divmod(d);
  EXPECT_EQ(qt * d + r, a);
  EXPECT_LT(r.degree(), d.degree());
  EXPECT_EQ(poly_gcd(a * d, d * FpPoly(5, {1, 1})).monic(), d.monic());
}

TEST(FpPoly, InflateDeflate) {
  const FpPoly a(3, {1, 0, 2});
  EXPECT_EQ(a.inflate(3).degree(), 6);
  EXPECT_EQ(*a.inflate(3).deflate(3), a);
  EXPECT_FALSE(FpPoly(3, {1, 1}).deflate(2));
}

TEST(ResField, PrimeFieldMatchesIntegerArithmetic) {
  const auto F = ResFieldDesc::finite(7);
  for (int a = 0; a < 7; ++a) {
    for (int b = 0; b < 7; ++b) {
      const auto x = ResElem::from_int(F, a), y = ResElem::from_int(F, b);
      EXPECT_EQ(x * y, ResElem::from_int(F, (a * b) % 7));
      EXPECT_EQ(x - y, ResElem::from_int(F, ((a - b) % 7 + 7) % 7));
      if (b != 0) EXPECT_EQ((x / y) * y, x);
    }
  }
  EXPECT_THROW(ResElem::zero(F).inverse(), DivisionByZero);
}

TEST(ResField, FiniteExtensionFrobeniusIsBijective) {
  const auto F = ResFieldDesc::finite(3, 2);
  ASSERT_EQ(F.modulus().degree(), 2);
  const auto g = ResElem::gen(F);
  std::vector<ResElem> all;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) all.push_back(ResElem::from_int(F, a) + ResElem::from_int(F, b) * g);
  }
  std::size_t hits = 0;
  for (const auto& x : all) {
    if (!x.is_zero()) EXPECT_TRUE((x * x.inverse()).is_one());
    EXPECT_EQ(x.pow(9), x);
    const auto r = pth_root(x);
    ASSERT_TRUE(r);
    EXPECT_EQ(frobenius(*r), x);
    for (const auto& y : all) hits += frobenius(y) == x;
  }
  EXPECT_EQ(hits, all.size());
  EXPECT_TRUE(is_perfect(F));
}

TEST(ResField, RationalFunctionRoots) {
  const auto F = ResFieldDesc::ratfun(3);
  const auto u = ResElem::gen(F);
  EXPECT_FALSE(pth_root(u));
  EXPECT_FALSE(is_perfect(F));
  const auto x = (u + ResElem::one(F)) / (u * u + ResElem::from_int(F, 2));
  const auto r = pth_root(x.pow(3));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, x);
  const auto [F1, w] = adjoin_pth_root(F, u);
  EXPECT_EQ(F1.level(), 1u);
  EXPECT_EQ(frobenius(w), promote(u, 1));
  EXPECT_THROW(adjoin_pth_root(F, u.pow(3)), PreconditionError);
}

TEST(ResField, UPowersAndDecompose) {
  const auto F2 = ResFieldDesc::perflevel(3, 2);
  const auto w = ResElem::u_power(F2, 1, 1, 9);
  EXPECT_EQ(w, ResElem::gen(F2));
  EXPECT_EQ(w.pow(9), promote(ResElem::gen(ResFieldDesc::ratfun(3)), 2));
  const auto y = ResElem::u_power(F2, 2, 5, 9) + ResElem::u_power(F2, 1, 1, 3);
  const auto parts = decompose(y);
  ASSERT_EQ(parts.size(), 3u);
  ResElem sum = ResElem::zero(F2);
  for (std::size_t i = 0; i < parts.size(); ++i) sum = sum + promote(parts[i], 2) * w.pow(static_cast<long>(i));
  EXPECT_EQ(sum, y);
}

TEST(ResField, CommonFieldAndMismatch) {
  const auto a = ResFieldDesc::perflevel(3, 1), b = ResFieldDesc::perflevel(3, 3);
  EXPECT_EQ(common_field(a, b).level(), 3u);
  EXPECT_THROW(common_field(a, ResFieldDesc::ratfun(5)), PreconditionError);
  EXPECT_EQ(resfield_from_json(to_json(b)), b);
}
