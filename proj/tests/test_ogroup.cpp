#include <set>

#include <gtest/gtest.h>

#include "vallab/errors.hpp"
#include "vallab/lattice.hpp"
#include "vallab/ogroup.hpp"
#include "vallab/rational.hpp"
#include "vallab/verify.hpp"

using namespace vallab;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }
LexValue lv(std::initializer_list<Rational> cs) { return LexValue(std::vector<Rational>(cs)); }

}  // namespace

TEST(Rational, ParseCanonical) {
  EXPECT_EQ(parse_rational("6/4"), q(3, 2));
  EXPECT_EQ(parse_rational("-2"), q(-2));
  EXPECT_EQ(to_string(parse_rational("-10/15")), "-2/3");
  EXPECT_THROW(parse_rational("1/0"), DivisionByZero);
  EXPECT_THROW(parse_rational("x"), PreconditionError);
}

TEST(Rational, PadicValuation) {
  EXPECT_EQ(padic_valuation(Integer(54), 3), 3);
  EXPECT_EQ(padic_valuation(q(5, 18), 3), -2);
  EXPECT_EQ(padic_valuation(q(5, 18), 2), -1);
  EXPECT_EQ(reduce_mod_p(q(1, 2), 3), 2u);
  EXPECT_EQ(floor(q(-1, 3)), Integer(-1));
  EXPECT_TRUE(is_prime(5));
  EXPECT_FALSE(is_prime(9));
}

TEST(Lattice, HnfMembershipMatchesEnumeration) {
  using lattice::IntMat;
  using lattice::IntVec;
  const IntMat rows{{4, 6}, {2, 9}, {6, 3}};
  const IntMat H = lattice::hnf(rows);
  ASSERT_EQ(H.size(), 2u);
  // 24 Z^2 lies in the lattice (index 24), so membership is decided mod 24.
  std::set<std::pair<long, long>> residues;
  for (long a = 0; a < 24; ++a) {
    for (long b = 0; b < 24; ++b) {
      for (long c = 0; c < 24; ++c) {
        residues.insert({(4 * a + 2 * b + 6 * c) % 24, (6 * a + 9 * b + 3 * c) % 24});
      }
    }
  }
  for (long x = -30; x <= 30; ++x) {
    for (long y = -30; y <= 30; ++y) {
      const bool hit = residues.count({((x % 24) + 24) % 24, ((y % 24) + 24) % 24}) > 0;
      EXPECT_EQ(lattice::is_zero(lattice::reduce(IntVec{x, y}, H)), hit) << x << "," << y;
    }
  }
  // Index in Z^2 is the gcd of the 2x2 minors 24, -24, -48.
  EXPECT_EQ(lattice::pivot_product(H), Integer(24));
}

TEST(OGroup, LexOrder) {
  EXPECT_LT(lv({0, 5}), lv({q(1, 100), -7}));
  EXPECT_TRUE(lv({0, q(1, 2)}).is_positive());
  EXPECT_FALSE(lv({q(-1), 9}).is_positive());
  EXPECT_EQ(lv({0, 3}).leading_position(), 1u);
}

TEST(OGroup, ContainsCyclicAndPClosed) {
  const OGroup z = OGroup::cyclic(q(1, 2));
  EXPECT_TRUE(contains(z, q(-3, 2)));
  EXPECT_FALSE(contains(z, q(1, 3)));
  const OGroup z3 = OGroup::cyclic(1, 3, true);
  EXPECT_TRUE(contains(z3, q(5, 243)));
  EXPECT_FALSE(contains(z3, q(1, 2)));
  EXPECT_TRUE(is_p_divisible(z3, 3));
  EXPECT_FALSE(is_p_divisible(z3, 2));
  EXPECT_FALSE(is_p_divisible(z, 2));
}

TEST(OGroup, IndexAgainstEnumeration) {
  const OGroup g = OGroup::cyclic(q(1, 6));
  const OGroup h = OGroup::cyclic(q(1, 2));
  ASSERT_TRUE(index(g, h));
  EXPECT_EQ(*index(g, h), Integer(3));
  EXPECT_EQ(static_cast<long>(brute_index({LexValue(q(1, 6))}, {LexValue(q(1, 2))})), 3);
  const OGroup g2(2, {lv({1, 0}), lv({0, 1})}, {}, 1);
  const OGroup h2(2, {lv({2, 1}), lv({0, 3})}, {}, 1);
  EXPECT_EQ(*index(g2, h2), Integer(6));
  EXPECT_EQ(static_cast<long>(brute_index(g2.gens(), h2.gens())), 6);
  const OGroup h1(2, {lv({2, 1})}, {}, 1);
  EXPECT_FALSE(index(g2, h1));
  EXPECT_THROW(index(h2, g2), PreconditionError);
}

TEST(OGroup, IndexOverPClosedGroups) {
  const OGroup g = OGroup::cyclic(1, 3, true);
  EXPECT_EQ(*index(g, g), Integer(1));
  EXPECT_FALSE(index(g, OGroup::cyclic(1, 3)));
}

TEST(OGroup, ConvexCoreOfLexProduct) {
  const OGroup g(2, {lv({1, 0}), lv({0, 1})}, {1}, 3);
  const ConvexPart c = convex_core(g, lv({0, 1}), 3);
  EXPECT_EQ(c.cut_index, 1u);
  EXPECT_TRUE(is_p_divisible(c.group, 3));
  EXPECT_FALSE(is_p_divisible(g, 3));
  EXPECT_TRUE(is_roughly_p_divisible(g, lv({0, 1}), 3));
  EXPECT_FALSE(is_roughly_p_divisible(g, std::nullopt, 3));
  const ConvexPart whole = convex_core(g, lv({1, 0}), 3);
  EXPECT_EQ(whole.cut_index, 0u);
}

TEST(OGroup, ElementBelow) {
  EXPECT_FALSE(has_element_below(OGroup::cyclic(1), LexValue(q(1))));
  EXPECT_TRUE(has_element_below(OGroup::cyclic(1, 3, true), LexValue(q(1))));
  const OGroup g(2, {lv({1, 0}), lv({0, 1})}, {}, 1);
  EXPECT_FALSE(has_element_below(g, lv({0, 1})));
  EXPECT_TRUE(has_element_below(g, lv({1, 0})));
}

TEST(OGroup, Hulls) {
  const OGroup z = OGroup::cyclic(1);
  const OGroup h2 = hull(z, HullKind::p_div, 2u, 3);
  EXPECT_TRUE(contains(h2, q(1, 9)));
  EXPECT_FALSE(contains(h2, q(1, 27)));
  const OGroup hx = hull(z, HullKind::p_div, std::nullopt, 3);
  EXPECT_TRUE(contains(hx, q(1, 3 * 3 * 3 * 3 * 3)));
  EXPECT_TRUE(is_p_divisible(hx, 3));
  // Join of (1/m)Z for m in {1, 2, 4}: index 4 over Z, no thirds.
  const OGroup hp = hull(z, HullKind::p_prime_div, 4u, 3);
  EXPECT_EQ(*index(hp, z), Integer(4));
  EXPECT_TRUE(same_group(hp, OGroup::cyclic(q(1, 4))));
  EXPECT_FALSE(contains(hp, q(1, 3)));
  EXPECT_FALSE(contains(hull(z, HullKind::p_prime_div, 2u, 3), q(1, 4)));
  EXPECT_THROW(hull(z, HullKind::p_prime_div, std::nullopt, 3), PreconditionError);
}

TEST(OGroup, OrderModulo) {
  const OGroup z = OGroup::cyclic(1);
  EXPECT_EQ(order_modulo(z, LexValue(q(2, 9)), 100), 9ul);
  EXPECT_FALSE(order_modulo(z, LexValue(q(1, 101)), 100));
}

TEST(OGroup, JsonRoundTrip) {
  const OGroup g(2, {lv({1, 0}), lv({0, q(1, 2)})}, {1}, 3);
  const OGroup r = ogroup_from_json(to_json(g));
  EXPECT_TRUE(same_group(g, r));
  EXPECT_EQ(r.prime(), 3ul);
  EXPECT_THROW(ogroup_from_json(nlohmann::json{{"rank", 2}, {"gens", {{1}}}}), PreconditionError);
}

TEST(OGroup, RandomSuiteAgreesWithBruteForce) {
  const SuiteResult r = ogroup_suite(7, 40);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
}
