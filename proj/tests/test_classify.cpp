#include <gtest/gtest.h>

#include "vallab/classify.hpp"
#include "vallab/errors.hpp"
#include "vallab/rational.hpp"
#include "vallab/verify.hpp"

using namespace vallab;

namespace {

const FieldDescriptor& by_name(const std::vector<FieldDescriptor>& ds, const std::string& n) {
  for (const auto& d : ds) {
    if (d.name == n) return d;
  }
  throw std::runtime_error("no descriptor " + n);
}

FieldDescriptor qp(unsigned long p) {
  FieldDescriptor d;
  d.name = "Q_p";
  d.characteristic = 0;
  d.res_char = p;
  d.value_group = OGroup::cyclic(1, p);
  d.vp = LexValue(Rational(1));
  d.residue_field = ResFieldDesc::finite(static_cast<std::uint32_t>(p));
  d.flags.henselian = Verdict::yes;
  d.flags.defectless = Verdict::yes;
  d.flags.frobenius_surjective = Verdict::yes;
  return d;
}

}  // namespace

TEST(Classify, VerdictAlgebra) {
  EXPECT_EQ(verdict_and(Verdict::yes, Verdict::unknown), Verdict::unknown);
  EXPECT_EQ(verdict_and(Verdict::no, Verdict::unknown), Verdict::no);
  EXPECT_EQ(verdict_from_json(nlohmann::json(true)), Verdict::yes);
  EXPECT_EQ(verdict_from_json(nlohmann::json("unknown")), Verdict::unknown);
  EXPECT_EQ(to_string(Verdict::not_applicable), "not_applicable");
}

TEST(Classify, PAdicRationals) {
  const auto r = check(qp(3));
  EXPECT_EQ(r.at("TF1"), Verdict::no);
  EXPECT_EQ(r.at("TF2"), Verdict::yes);
  EXPECT_EQ(r.at("tame"), Verdict::no);
  EXPECT_EQ(r.at("roughly_tame"), Verdict::no);
  // vp = 1 is the smallest positive element.
  EXPECT_EQ(r.at("rdr_2"), Verdict::no);
  EXPECT_EQ(r.evidence.at("TF1").source, "computed");
}

TEST(Classify, NonHenselianIsNotApplicable) {
  auto d = qp(3);
  d.flags.henselian = Verdict::no;
  const auto r = check(d);
  EXPECT_EQ(r.at("tame"), Verdict::not_applicable);
  EXPECT_EQ(r.at("roughly_tame"), Verdict::not_applicable);
}

TEST(Classify, ValidationRejectsInconsistentDescriptors) {
  auto d = qp(3);
  d.vp.reset();
  EXPECT_THROW(validate(d), PreconditionError);
  auto e = qp(3);
  e.vp = LexValue(Rational(-1));
  EXPECT_THROW(validate(e), PreconditionError);
  auto f = qp(3);
  f.residue_field = ResFieldDesc::finite(5);
  EXPECT_THROW(validate(f), PreconditionError);
}

TEST(Classify, JsonRoundTrip) {
  const auto d = qp(5);
  const auto r = descriptor_from_json(to_json(d));
  EXPECT_EQ(r.name, d.name);
  EXPECT_EQ(r.res_char, 5ul);
  EXPECT_TRUE(same_group(r.value_group, d.value_group));
  EXPECT_EQ(to_json(check(r)).dump(), to_json(check(d)).dump());
}

TEST(Classify, CompositionCoreAndFlags) {
  const auto ds = load_corpus(VALLAB_CORPUS_DIR);
  const auto& core = by_name(ds, "C_3");
  FieldDescriptor outer;
  outer.name = "Z";
  outer.characteristic = 0;
  outer.res_char = 0;
  outer.value_group = OGroup::cyclic(1);
  outer.residue_perfect = Verdict::yes;
  outer.flags.henselian = Verdict::yes;
  outer.flags.defectless = Verdict::yes;
  const auto d = compose(outer, core);
  EXPECT_EQ(d.value_group.rank(), 2u);
  ASSERT_TRUE(d.vp);
  EXPECT_EQ(*d.vp, LexValue(std::vector<Rational>{0, 1}));
  EXPECT_EQ(core_field(d).name, core.name);
  const auto r = check(d);
  EXPECT_EQ(r.at("roughly_tame"), Verdict::yes);
  EXPECT_EQ(r.at("TF1"), Verdict::no);
}

TEST(Classify, CorpusAudit) {
  const auto ds = load_corpus(VALLAB_CORPUS_DIR);
  ASSERT_EQ(ds.size(), 12u);
  const auto a = audit_implications(ds);
  EXPECT_EQ(a.violations, 0u);
  for (const auto& d : ds) {
    if (!d.equal_char()) continue;
    const auto r = check(d);
    EXPECT_EQ(r.at("roughly_tame"), r.at("tame")) << d.name;
  }
  const SuiteResult s = implications_suite(VALLAB_CORPUS_DIR);
  EXPECT_TRUE(s.ok());
}

TEST(Classify, CounterexampleFromCorpus) {
  const auto ds = load_corpus(VALLAB_CORPUS_DIR);
  const auto& d = by_name(ds, "Z lex tame core");
  const auto r = check(d);
  EXPECT_EQ(r.at("tame"), Verdict::no);
  EXPECT_EQ(r.at("roughly_tame"), Verdict::yes);
  EXPECT_EQ(r.at("semitame"), Verdict::no);
}
