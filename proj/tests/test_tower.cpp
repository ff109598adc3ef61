#include <gtest/gtest.h>

#include "vallab/errors.hpp"
#include "vallab/rational.hpp"
#include "vallab/tower.hpp"

using namespace vallab;

namespace {

using ST = Tower<Series>;
using PT = Tower<PSeries>;

SeriesTraits::Ctx sctx(std::uint32_t p, bool ratfun, long cap = 40) {
  SeriesTraits::Ctx c;
  c.p = p;
  c.base_field = ratfun ? ResFieldDesc::ratfun(p) : ResFieldDesc::finite(p);
  c.default_cap = cap;
  return c;
}

Series mono(const SeriesTraits::Ctx& c, const Rational& g, long cap = 40) {
  return Series::monomial(c, ResElem::one(c.base_field), g).with_cap(Rational(cap));
}

// X^p + s X + c
template <class T>
std::vector<typename T::Elem> trinomial(const T& t, const typename T::Elem& c, long s, unsigned long p) {
  std::vector<typename T::Elem> f{c, t.from_int(s)};
  for (unsigned long k = 2; k < p; ++k) f.push_back(t.zero());
  f.push_back(t.one());
  return f;
}

}  // namespace

class ArtinSchreier : public ::testing::TestWithParam<unsigned> {};

TEST_P(ArtinSchreier, RamifiedRootOfNegativeValue) {
  const unsigned p = GetParam();
  const auto c = sctx(p, false);
  const ST K(c, OGroup::cyclic(1, p));
  const auto a = K.ground(mono(c, -1));
  auto [L, th] = K.adjoin_root(trinomial(K, -a, -1, p));
  const StepInfo& s = L.steps().back();
  EXPECT_EQ(s.degree, p);
  EXPECT_EQ(s.e, p);
  EXPECT_EQ(s.f, 1u);
  EXPECT_EQ(s.m, 0u);
  // The polygon of X^p - X - t^{-1} has one segment from (0, -1) to (p, 0).
  EXPECT_EQ(th.val().get(), make_rational(-1, p));
  EXPECT_TRUE((th.pow(p) - th - L.embed(a)).vanishes());
  EXPECT_EQ(*index(L.value_group(), K.value_group()), Integer(p));
}

TEST_P(ArtinSchreier, InverseNormAndCharpoly) {
  const unsigned p = GetParam();
  const auto c = sctx(p, false);
  const ST K(c, OGroup::cyclic(1, p));
  const auto a = K.ground(mono(c, -1));
  auto [L, th] = K.adjoin_root(trinomial(K, -a, -1, p));
  const auto x = th * th + L.from_int(1) + th.pow(p - 1) * L.ground(mono(c, 2));
  EXPECT_TRUE((x * x.inverse() - L.one()).vanishes());
  // Product of the roots of X^p - X - a is (-1)^p (-a) = a (in characteristic 2 as well).
  const Series n = L.norm_to_ground(th);
  EXPECT_TRUE((n - mono(c, -1)).vanishes());
  EXPECT_EQ(n.val().get(), Rational(-1));
  // Charpoly of the generator annihilates it.
  const auto cp = L.charpoly(th);
  ASSERT_EQ(cp.size(), p + 1);
  EXPECT_TRUE(eval_poly(cp, th).vanishes());
}

TEST_P(ArtinSchreier, WitnessAndLift) {
  const unsigned p = GetParam();
  const auto c = sctx(p, false);
  const ST K(c, OGroup::cyclic(1, p));
  auto [L, th] = K.adjoin_root(trinomial(K, -K.ground(mono(c, -1)), -1, p));
  for (long k = -3; k <= 3; ++k) {
    const Rational s = make_rational(k, p);
    EXPECT_EQ(L.witness(s).val().get(), s);
  }
  EXPECT_THROW(L.witness(make_rational(1, p * p)), PreconditionError);
  const auto r = ResElem::from_int(L.residue_field(), p - 1);
  EXPECT_EQ(L.lift(r).residue(), r);
}

INSTANTIATE_TEST_SUITE_P(Primes, ArtinSchreier, ::testing::Values(2u, 3u, 5u));

TEST(Tower, ResidueStepInRationalFunctionResidueField) {
  const unsigned p = 3;
  const auto c = sctx(p, true);
  const ST K(c, OGroup::cyclic(1, p));
  const ResElem u = ResElem::gen(c.base_field);
  // X^p - X - u t^{-p}: root u^{1/p} t^{-1} + higher order terms.
  const auto cc = K.ground(Series::monomial(c, u, -3).with_cap(40));
  auto [L, th] = K.adjoin_root(trinomial(K, -cc, -1, p));
  const StepInfo& s = L.steps().back();
  EXPECT_EQ(s.kind, StepKind::residue);
  EXPECT_EQ(s.f, p);
  EXPECT_EQ(s.e, 1u);
  EXPECT_EQ(*index(L.value_group(), K.value_group()), Integer(1));
  const ResElem r = (th * L.ground(mono(c, 1))).residue();
  EXPECT_EQ(frobenius(r), promote(u, r.field().level()));
  EXPECT_EQ(L.residue_field(), ResFieldDesc::perflevel(p, 1));
  const ResElem w = ResElem::gen(L.residue_field());
  EXPECT_EQ(L.lift(w).residue(), w);
  EXPECT_EQ(L.lift(w + ResElem::one(L.residue_field())).residue(), w + ResElem::one(L.residue_field()));
}

TEST(Tower, EmbeddedStepAndPrefix) {
  const unsigned p = 3;
  const auto c = sctx(p, false);
  const ST K(c, OGroup::cyclic(1, p));
  const Series g = series_pth_root(mono(c, -1));
  std::vector<Series> f(p + 1, Series::zero(c));
  f[0] = -mono(c, -1);
  f[p] = Series::one(c);
  const ST K1 = K.adjoin_embedded(g, f);
  EXPECT_EQ(K1.embedded_count(), 1u);
  EXPECT_TRUE(contains(K1.value_group(), make_rational(-1, 3)));
  EXPECT_EQ(K1.steps().back().e, p);
  auto [L, th] = K1.adjoin_root(trinomial(K1, -K1.ground(mono(c, -1)), -1, p));
  EXPECT_TRUE(L.extends(K1));
  EXPECT_TRUE(L.prefix(L.depth() - 1).extends(K1));
  // th - t^{-1/3} has value -1/9.
  EXPECT_EQ((th - L.ground(g)).val().get(), make_rational(-1, 9));
}

TEST(Tower, SplitPolynomialIsNotAStep) {
  const unsigned p = 3;
  const auto c = sctx(p, false);
  const ST K(c, OGroup::cyclic(1, p));
  // X^3 - X has roots 0, 1, -1.
  EXPECT_THROW(K.adjoin_root(trinomial(K, K.zero(), -1, p)), Error);
  // X^3 - X - t: polygon has two slopes.
  EXPECT_THROW(K.adjoin_root(trinomial(K, -K.ground(mono(c, 1)), -1, p)), NotSingleSlope);
}

class RootOfUnity : public ::testing::TestWithParam<unsigned> {};

TEST_P(RootOfUnity, ValueMatchesNorm) {
  const unsigned p = GetParam();
  PSeriesTraits::Ctx c;
  c.p = p;
  c.default_cap = 20;
  const PT K(c, OGroup::cyclic(1, p));
  // Phi_p(X + 1), monic, constant term p.
  std::vector<PT::Elem> phi;
  for (unsigned k = 1; k <= p; ++k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), p, k);
    phi.push_back(K.ground(PSeries::from_int(c, b.get_si())));
  }
  auto [F, pi] = K.adjoin_root(phi);
  // Oracle: the norm of zeta - 1 is p up to sign, over a degree p - 1 extension.
  const PSeries n = F.norm_to_ground(pi);
  EXPECT_EQ(n.val().get(), Rational(1));
  EXPECT_EQ(pi.val().get() * Rational(static_cast<long>(p - 1)), Rational(1));
  EXPECT_EQ(F.steps().back().e, p - 1);
  const auto zeta = pi + F.one();
  EXPECT_TRUE((zeta.pow(p) - F.one()).vanishes());
}

INSTANTIATE_TEST_SUITE_P(OddPrimes, RootOfUnity, ::testing::Values(3u, 5u, 7u));
