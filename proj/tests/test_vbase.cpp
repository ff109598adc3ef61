#include <gtest/gtest.h>

#include "vallab/errors.hpp"
#include "vallab/vbase.hpp"

using namespace vallab;

namespace {

SeriesTraits::Ctx series_ctx(std::uint32_t p, bool ratfun) {
  SeriesTraits::Ctx c;
  c.p = p;
  c.base_field = ratfun ? ResFieldDesc::ratfun(p) : ResFieldDesc::finite(p);
  c.default_cap = 20;
  return c;
}

}  // namespace

TEST(Series, InverseAtPrecision) {
  const auto ctx = series_ctx(5, false);
  const Series x = parse_series(ctx, "[2]*t^(-1) + [1] + [3]*t^(1/2)");
  const Series y = x.inverse();
  const Series e = x * y - Series::one(ctx);
  EXPECT_TRUE(e.vanishes());
  ASSERT_TRUE(e.cap());
  EXPECT_GE(*e.cap(), Rational(15));
  EXPECT_EQ(y.val().get(), Rational(1));
}

TEST(Series, CapsPropagate) {
  const auto ctx = series_ctx(3, false);
  const Series a = parse_series(ctx, "[1]*t^(-1) + O(t^(4))");
  const Series b = parse_series(ctx, "[1]*t^(2)");
  ASSERT_TRUE((a * b).cap());
  EXPECT_EQ(*(a * b).cap(), Rational(6));
  const Series z = a - a;
  EXPECT_FALSE(z.val().known);
  EXPECT_THROW(z.val().get(), PrecisionError);
}

TEST(Series, PthRootIsFrobeniusInverse) {
  const auto ctx = series_ctx(3, true);
  const Series x = parse_series(ctx, "[u]*t^(-1) + [2] + [u^2]*t^(2) + O(t^(9))");
  const Series r = series_pth_root(x);
  EXPECT_EQ(r.val().get(), Rational(-1, 3));
  EXPECT_TRUE((r.pow(3) - x).vanishes());
  EXPECT_EQ(residue(parse_series(ctx, "[u] + [1]*t^(1)")), ResElem::gen(ctx.base_field));
}

TEST(PSeries, CarryMovesContentIntoExponent) {
  PSeriesTraits::Ctx ctx;
  ctx.p = 3;
  ctx.has_u = true;
  const PSeries x = PSeries::monomial(ctx, LaurentQ::constant(18), 0);
  EXPECT_EQ(x.val().get(), Rational(2));
  const PSeries y = parse_pseries(ctx, "[3*u + 9]*p^(1/2)");
  EXPECT_EQ(y.val().get(), Rational(3, 2));
  EXPECT_EQ(residue(y * PSeries::monomial(ctx, LaurentQ::constant(1), Rational(-3, 2))),
            ResElem::gen(ResFieldDesc::ratfun(3)));
}

TEST(Padic, MatchesRationalArithmetic) {
  const unsigned long p = 5;
  const long N = 12;
  const std::vector<Rational> xs{make_rational(3, 7), make_rational(-50, 3), make_rational(125, 2),
                                 make_rational(1, 25)};
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      const auto A = PadicNumber::from_rational(a, p, N), B = PadicNumber::from_rational(b, p, N);
      EXPECT_EQ(A * B, PadicNumber::from_rational(a * b, p, N));
      EXPECT_EQ(A / B, PadicNumber::from_rational(a / b, p, N));
      EXPECT_EQ((A + B).valuation(), padic_valuation(Rational(a + b), p));
    }
  }
  EXPECT_THROW(PadicNumber::from_rational(1, p, N) / PadicNumber(p, N), DivisionByZero);
}

TEST(Padic, ParseAndPrint) {
  const auto x = PadicNumber::from_rational(make_rational(-1), 3, 4);
  EXPECT_EQ(x.to_string(), "3^0*(2 + 2*3 + 2*3^2 + 2*3^3 + O(3^4))");
  EXPECT_EQ(PadicNumber::parse(x.to_string(), 3), x);
}
