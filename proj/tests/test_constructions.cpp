#include <algorithm>
#include <cstdlib>

#include <gtest/gtest.h>

#include "vallab/classify.hpp"
#include "vallab/constructions.hpp"
#include "vallab/errors.hpp"
#include "vallab/rational.hpp"

using namespace vallab;

namespace {

Rational inv_pow(unsigned long p, std::size_t k) {
  Integer d = 1;
  for (std::size_t i = 0; i < k; ++i) d *= static_cast<long>(p);
  return Rational(Integer(1), d);
}

std::string failing(const DefectCertificate& c) {
  std::string s;
  for (const auto& k : c.checks) {
    if (!k.ok) s += k.name + " (" + k.detail + "); ";
  }
  return s;
}

const Check& need(const DefectCertificate& c, const std::string& name) {
  const Check* k = c.find(name);
  if (!k) throw std::runtime_error("missing check " + name);
  return *k;
}

}  // namespace

class PerPrime : public ::testing::TestWithParam<unsigned long> {};

TEST_P(PerPrime, ArtinSchreierValueGroupTower) {
  const unsigned long p = GetParam();
  const auto c = build_as_valgp(p, 3, required_precision(p, 3));
  EXPECT_TRUE(c.all_ok()) << failing(c);
  ASSERT_EQ(c.rows.size(), 4u);
  for (std::size_t n = 0; n < c.rows.size(); ++n) {
    EXPECT_EQ(c.rows[n].degree, p);
    EXPECT_EQ(c.rows[n].e, p);
    EXPECT_EQ(c.rows[n].f, 1u);
    EXPECT_EQ(c.rows[n].m, 0u);
    EXPECT_EQ(c.rows[n].new_value, to_string(Rational(-inv_pow(p, n + 1))));
  }
  EXPECT_EQ(c.absorption, std::vector<bool>(3, true));
}

TEST_P(PerPrime, ArtinSchreierResidueTower) {
  const unsigned long p = GetParam();
  const auto c = build_as_resf(p, 2, required_precision(p, 2));
  EXPECT_TRUE(c.all_ok()) << failing(c);
  for (std::size_t n = 0; n <= 2; ++n) {
    const std::string ns = std::to_string(n);
    EXPECT_EQ(need(c, "residue(b_" + ns + "/a_" + std::to_string(n + 1) + ") = u^(1/p^" +
                          std::to_string(n + 1) + ")")
                  .detail,
              "u^(1/" + to_string(Rational(1) / inv_pow(p, n + 1)) + ")");
    EXPECT_EQ(c.rows[n].f, p);
    EXPECT_EQ(c.rows[n].e, 1u);
  }
}

TEST_P(PerPrime, KummerTowers) {
  const unsigned long p = GetParam();
  const auto c = build_kummer_valgp(p, 2, required_precision(p, 2));
  EXPECT_TRUE(c.all_ok()) << failing(c);
  // a_0 = (zeta - 1)^{-1}: value -1/(p - 1); for p = 2, zeta - 1 = -2.
  const Rational alpha = p == 2 ? Rational(-1) : Rational(-1) / Rational(static_cast<long>(p - 1));
  for (std::size_t k = 0; k <= 2; ++k) {
    EXPECT_EQ(need(c, "v(b_" + std::to_string(k) + ") = alpha/p^" + std::to_string(k + 1)).detail,
              to_string(Rational(alpha * inv_pow(p, k + 1))));
  }
  const auto r = build_kummer_resf(p, 2, required_precision(p, 2));
  EXPECT_TRUE(r.all_ok()) << failing(r);
}

INSTANTIATE_TEST_SUITE_P(Primes, PerPrime, ::testing::Values(2ul, 3ul, 5ul));

TEST(Constructions, SingleResidueStep) {
  for (unsigned long p : {2ul, 3ul}) {
    const auto c = build_lemma_3_3(p, required_precision(p, 0));
    EXPECT_TRUE(c.all_ok()) << failing(c);
    EXPECT_EQ(need(c, "new residue = u^(1/p)").detail, "u^(1/" + std::to_string(p) + ")");
  }
  EXPECT_THROW(build_lemma_3_3(3, required_precision(3, 0), 0), PreconditionError);
}

TEST(Constructions, TwoExtensionsCharTwo) {
  const auto c = build_2ext(2, required_precision(2, 0));
  EXPECT_TRUE(c.all_ok()) << failing(c);
}

TEST(Constructions, TwoExtensionsOddSignOfDeepResidue) {
  // e^p = -c + (higher order) for odd p, so residue(e/d) is -u^(1/p^2).
  const auto c = build_2ext(3, required_precision(3, 0));
  EXPECT_EQ(need(c, "residue(e/d) generates Kv(u^(1/p^2))").ok, true);
  EXPECT_TRUE(need(c, "v(e^p + c) > v(c)").ok);
  EXPECT_EQ(need(c, "residue(e/d) = u^(1/p^2)").detail, "2*u^(1/9)");
  EXPECT_TRUE(need(c, "E'.E over E has degree p").ok);
  EXPECT_THROW(build_2ext(3, required_precision(3, 0), Rational(-1, 2)), PreconditionError);
  EXPECT_THROW(build_2ext(3, required_precision(3, 0), Rational(-1)), PreconditionError);
  // -1/20 has a prime-to-p denominator part 4 not dividing p - 1 = 2.
  EXPECT_THROW(build_2ext(3, required_precision(3, 0), Rational(-1, 20)), PreconditionError);
}

TEST(Constructions, TwoExtensionsParameterOfD) {
  // 1/2 - 5/9 = -1/18 lies in (-1/9, 0) and in the value group (1/18)Z of Q_3(zeta_3, 3^(1/9)).
  const auto c = build_2ext(3, required_precision(3, 0));
  EXPECT_EQ(c.params["vd"], "-1/18");
  EXPECT_TRUE(need(c, "v(d) = vd").ok);
  EXPECT_EQ(need(c, "v(c) = p*vd").detail, "-1/6");
  const auto c5 = build_2ext(5, required_precision(5, 0));
  EXPECT_EQ(c5.params["vd"], "-1/100");
  EXPECT_TRUE(need(c5, "v(d) = vd").ok);
  const auto deep = build_2ext(3, required_precision(3, 0), Rational(-1, 27));
  EXPECT_EQ(need(deep, "v(c) = p*vd").detail, "-1/9");
}

TEST(Constructions, Preconditions) {
  EXPECT_THROW(build_as_valgp(4, 1, required_precision(4, 1)), PreconditionError);
  EXPECT_THROW(build_example("nope", 3, 1, required_precision(3, 1)), PreconditionError);
  Precision low = required_precision(3, 3);
  low.series_cap = 10;
  EXPECT_THROW(build_as_valgp(3, 3, low), PrecisionError);
  Precision lowp = required_precision(3, 9);
  lowp.padic_cap = 10;
  EXPECT_THROW(build_kummer_valgp(3, 9, lowp), PrecisionError);
}

TEST(Constructions, PrecisionDefaults) {
  const Precision r = required_precision(3, 2);
  EXPECT_EQ(r.series_cap, Rational(28));
  EXPECT_EQ(r.padic_cap, 81);
  const Precision q = parse_precision("series=100,padic=7", r);
  EXPECT_EQ(q.series_cap, Rational(100));
  EXPECT_EQ(q.padic_cap, 7);
  EXPECT_THROW(parse_precision("series", r), PreconditionError);
  setenv("VALLAB_PRECISION_DEFAULT", "padic=500", 1);
  EXPECT_EQ(default_precision(3, 2).padic_cap, 500);
  EXPECT_EQ(default_precision(3, 2).series_cap, Rational(28));
  unsetenv("VALLAB_PRECISION_DEFAULT");
  EXPECT_EQ(default_precision(3, 2).padic_cap, 81);
}

TEST(Constructions, CertificateSerialization) {
  const auto c = build_as_valgp(2, 1, required_precision(2, 1));
  const auto j = to_json(c);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_TRUE(j.contains("precision"));
  const std::string tsv = to_tsv(c);
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')), "n\tdegree\te\tf\tm\tkind\tnew_value\tnew_residue");
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 3);
  EXPECT_EQ(to_json(build_as_valgp(2, 1, required_precision(2, 1))).dump(), j.dump());
}

TEST(Constructions, LimitClaimNeedsAbsorption) {
  const auto c = build_as_valgp(3, 1, required_precision(3, 1));
  ASSERT_EQ(c.steps.size(), 2u);
  DepthRecord r0{0, c.steps.back(), OGroup::cyclic(1, 3), ResFieldDesc::finite(3)};
  DepthRecord r1{1, c.steps.back(), OGroup::cyclic(1, 3), ResFieldDesc::finite(3)};
  // The depth-0 contribution (value -1/3) is not in the depth-1 group Z.
  r0.top.new_value = make_rational(-1, 3);
  EXPECT_THROW(limit_claim("x", 3, {r0, r1}), ConstructionError);
}

TEST(Constructions, CongruenceTrials) {
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    const auto r = congruence_trials(p, 200, 0);
    EXPECT_EQ(r.trials, 200u);
    EXPECT_EQ(r.passed, 200u) << (r.failures.empty() ? "" : r.failures.front());
  }
}

TEST(Constructions, CounterexampleDescriptor) {
  FieldDescriptor core;
  core.name = "core";
  core.characteristic = 0;
  core.res_char = 3;
  core.value_group = OGroup::cyclic(1, 3, true);
  core.vp = LexValue(Rational(1));
  core.residue_perfect = Verdict::yes;
  core.flags.henselian = Verdict::yes;
  core.flags.defectless = Verdict::yes;
  core.flags.tame = Verdict::yes;
  const auto d = build_counterexample_descriptor(core);
  const auto r = check(d);
  EXPECT_EQ(r.at("tame"), Verdict::no);
  EXPECT_EQ(r.at("roughly_tame"), Verdict::yes);
  EXPECT_EQ(r.at("semitame"), Verdict::no);
  core.flags.tame = Verdict::no;
  EXPECT_THROW(build_counterexample_descriptor(core), PreconditionError);
}
