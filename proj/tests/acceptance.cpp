// Acceptance suite: one PASS/FAIL line per criterion, with pinned runtime limits.
//
// Exit status is 0 iff every criterion passes except those listed in kKnownRed,
// and each of those fails. A known-red criterion that starts passing is an error.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vallab/classify.hpp"
#include "vallab/constructions.hpp"
#include "vallab/errors.hpp"
#include "vallab/rational.hpp"
#include "vallab/verify.hpp"

#ifndef VALLAB_CORPUS_DIR
#define VALLAB_CORPUS_DIR "data/descriptors"
#endif

using namespace vallab;

namespace {

const std::set<int> kKnownRed{6};

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool c, const std::string& what) {
    if (!c) {
      ok = false;
      notes.push_back(what);
    }
  }
};

Integer ppow(unsigned long p, std::size_t k) {
  Integer r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<long>(p);
  return r;
}

std::string frac(const Rational& q) { return to_string(q); }

std::string inv(unsigned long p, std::size_t k) { return frac(Rational(Integer(-1), ppow(p, k))); }

std::string u_root(unsigned long p, std::size_t k) { return "u^(1/" + ppow(p, k).get_str() + ")"; }

// Residue c*u^(1/p^k) with c a nonzero constant generates Kv(u^(1/p^k)) over Kv(u^(1/p^(k-1))).
bool generates(const std::string& r, unsigned long p, std::size_t k) {
  const std::string g = u_root(p, k);
  if (r == g) return true;
  const auto star = r.find('*');
  if (star == std::string::npos || r.substr(star + 1) != g) return false;
  const long c = std::stol(r.substr(0, star));
  return c % static_cast<long>(p) != 0;
}

const Check* find(const DefectCertificate& c, const std::string& name, Outcome& o) {
  const Check* k = c.find(name);
  o.expect(k != nullptr, c.construction + ": missing check '" + name + "'");
  return k;
}

void expect_ok(const DefectCertificate& c, const std::string& name, Outcome& o) {
  if (const Check* k = find(c, name, o)) o.expect(k->ok, c.construction + ": " + name + " [" + k->detail + "]");
}

void expect_detail(const DefectCertificate& c, const std::string& name, const std::string& want, Outcome& o) {
  if (const Check* k = find(c, name, o)) {
    o.expect(k->detail == want, c.construction + ": " + name + " is " + k->detail + ", expected " + want);
  }
}

bool is_step(const CertRow& r, unsigned long d, unsigned long e, unsigned long f, unsigned long m) {
  return r.degree == d && r.e == e && r.f == f && r.m == m;
}

Outcome c1_as_valgp() {
  Outcome o;
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto c = build_as_valgp(p, 3, required_precision(p, 3));
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.expect(s < 5.0, "p=" + std::to_string(p) + " took " + std::to_string(s) + " s");
    o.expect(c.rows.size() == 4, "expected 4 rows");
    for (std::size_t n = 0; n < c.rows.size(); ++n) {
      const std::string ns = std::to_string(n);
      o.expect(is_step(c.rows[n], p, p, 1, 0), "p=" + std::to_string(p) + " row " + ns + " not (p, p, 1, 0)");
      expect_detail(c, "v(b_" + ns + ") = -1/p^" + std::to_string(n + 1), inv(p, n + 1), o);
      expect_ok(c, "b_" + ns + "^p - b_" + ns + " - a_" + ns + " vanishes", o);
    }
    o.expect(c.absorption == std::vector<bool>(3, true), "absorption not verified at every depth");
  }
  return o;
}

Outcome c2_lemma() {
  Outcome o;
  for (unsigned long p : {2ul, 3ul}) {
    const auto c = build_lemma_3_3(p, required_precision(p, 0));
    o.expect(c.rows.size() == 1 && c.steps.size() == 1, "expected a single step");
    if (!c.rows.empty()) {
      o.expect(c.rows[0].kind == "residue" && is_step(c.rows[0], p, 1, p, 0), "step is not (p, 1, p, 0) residue");
      o.expect(c.rows[0].new_residue == u_root(p, 1), "new residue " + c.rows[0].new_residue);
    }
    expect_detail(c, "residue(theta/d) = u^(1/p)", u_root(p, 1), o);
    expect_detail(c, "value group index 1", "1", o);
  }
  return o;
}

Outcome c3_as_resf() {
  Outcome o;
  for (unsigned long p : {2ul, 3ul}) {
    const auto c = build_as_resf(p, 2, required_precision(p, 2));
    for (std::size_t n = 0; n <= 2; ++n) {
      const std::string ns = std::to_string(n);
      expect_detail(c, "value group index 1 at depth " + ns, "1", o);
      const std::string level = n == 0 ? "F_" + std::to_string(p) + "(u)"
                                       : "F_" + std::to_string(p) + "(u^(1/" + std::to_string(p) + "^" + ns + "))";
      expect_detail(c, "residue field level " + ns + " at depth " + ns, level, o);
      expect_detail(c, "residue(b_" + ns + "/a_" + std::to_string(n + 1) + ") = u^(1/p^" + std::to_string(n + 1) + ")",
                    u_root(p, n + 1), o);
      if (n < c.rows.size()) o.expect(is_step(c.rows[n], p, 1, p, 0), "row " + ns + " does not grow Kv by p");
    }
  }
  return o;
}

Outcome c4_congruence() {
  Outcome o;
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    const auto r = congruence_trials(p, 200, 0);
    o.expect(r.trials == 200 && r.passed == 200,
             "p=" + std::to_string(p) + ": " + std::to_string(r.passed) + "/" + std::to_string(r.trials));
  }
  return o;
}

Outcome c5_kummer_valgp() {
  Outcome o;
  const unsigned long p = 3;
  const auto c = build_kummer_valgp(p, 2, required_precision(p, 2));
  auto val = [](std::size_t i) { return frac(Rational(Integer(-1), 2 * ppow(3, i))); };
  expect_detail(c, "-vp <= v(a_0) < 0 and v(a_0)/p not in vF_0", val(0), o);
  for (std::size_t i = 1; i <= 2; ++i) expect_detail(c, "v(a_" + std::to_string(i) + ") = alpha/p^" + std::to_string(i), val(i), o);
  for (std::size_t k = 0; k <= 2; ++k) {
    const std::string ks = std::to_string(k);
    expect_detail(c, "v(b_" + ks + ") = alpha/p^" + std::to_string(k + 1), val(k + 1), o);
    if (k > 0) expect_ok(c, "v(b_" + ks + "^p + a_" + ks + ") >= 0", o);
    expect_ok(c, "top step over depth " + ks + " defectless", o);
  }
  for (const auto& s : c.steps) o.expect(s.m == 0 && s.degree == s.e * s.f, "a finite step has defect");
  return o;
}

Outcome c6_two_ext() {
  Outcome o;
  const unsigned long p = 3;
  const auto c = build_2ext(p, required_precision(p, 0));
  expect_ok(c, "E step is (p, 1, p, 0)", o);
  expect_ok(c, "E' step is (p, 1, p, 0)", o);
  expect_detail(c, "residue(c/d^p) = u^(1/p)", u_root(p, 1), o);
  expect_detail(c, "residue(b/d^p) = u^(1/p)", u_root(p, 1), o);
  expect_detail(c, "residue(e/d) = u^(1/p^2)", u_root(p, 2), o);
  expect_ok(c, "E'.E over E has degree p", o);
  return o;
}

Outcome c7_kummer_resf() {
  Outcome o;
  for (unsigned long p : {2ul, 3ul}) {
    const auto c = build_kummer_resf(p, 2, required_precision(p, 2));
    for (std::size_t i = 1; i <= 2; ++i) {
      const std::string is = std::to_string(i);
      if (const Check* k = find(c, "residue(a_" + is + ") generates Kv(eta^(1/p^" + is + "))", o)) {
        o.expect(k->ok && generates(k->detail, p, i), "residue(a_" + is + ") = " + k->detail);
      }
      expect_detail(c, "v(b_" + is + ") = vd_0/p^" + is, inv(p, i), o);
    }
    for (std::size_t k = 0; k <= 2; ++k) {
      const std::string ks = std::to_string(k);
      if (k > 0) expect_ok(c, "v(c_" + ks + "^p + b_" + ks + ") >= 0", o);
      expect_ok(c, "top step over depth " + ks + " has m = 0", o);
      if (k < c.rows.size()) {
        o.expect((c.rows[k].kind == "ramified" || c.rows[k].kind == "residue") && c.rows[k].m == 0,
                 "top step over depth " + ks + " is " + c.rows[k].kind);
      }
    }
    o.expect(c.absorption == std::vector<bool>(2, true), "absorption one level up failed");
  }
  return o;
}

Outcome c8_corpus() {
  Outcome o;
  const auto ds = load_corpus(VALLAB_CORPUS_DIR);
  o.expect(ds.size() == 12, "corpus has " + std::to_string(ds.size()) + " descriptors");
  const auto a = audit_implications(ds);
  o.expect(a.violations == 0, std::to_string(a.violations) + " violations");
  bool seen = false;
  for (const auto& d : ds) {
    const auto r = check(d);
    if (d.outer && d.core && d.core->flags.tame == Verdict::yes && d.name == "Z lex tame core") {
      seen = true;
      o.expect(r.at("tame") == Verdict::no, "counterexample tame = " + to_string(r.at("tame")));
      o.expect(r.at("roughly_tame") == Verdict::yes, "counterexample roughly_tame = " + to_string(r.at("roughly_tame")));
      o.expect(r.at("semitame") == Verdict::no, "counterexample semitame = " + to_string(r.at("semitame")));
    }
    if (d.equal_char()) o.expect(r.at("roughly_tame") == r.at("tame"), d.name + ": roughly_tame != tame");
  }
  o.expect(seen, "counterexample descriptor not found");
  return o;
}

Outcome c9_oracles() {
  Outcome o;
  const auto g = ogroup_suite(0, 100);
  o.expect(g.ok(), "ogroup: " + std::to_string(g.failed) + " failures");
  const auto n = newton_suite(0, 100);
  o.expect(n.ok(), "newton: " + std::to_string(n.failed) + " failures");
  return o;
}

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> cs{
      {1, "Artin-Schreier value-group tower, p in {2,3,5}, depth 3", 15.0, c1_as_valgp},
      {2, "single residue step over F_p(u)((t)), p in {2,3}", 1.0, c2_lemma},
      {3, "Artin-Schreier residue-field tower, p in {2,3}, depth 2", 5.0, c3_as_resf},
      {4, "congruence property, 200 trials per p in {2,3,5}", 10.0, c4_congruence},
      {5, "Kummer value-group tower, p = 3, depth 2", 10.0, c5_kummer_valgp},
      {6, "two residue extensions and their compositum, p = 3", 20.0, c6_two_ext},
      {7, "Kummer residue-field tower, p in {2,3}, depth 2", 30.0, c7_kummer_resf},
      {8, "classification corpus audit", 1.0, c8_corpus},
      {9, "group and Newton polygon oracles", 10.0, c9_oracles},
  };
  int status = 0;
  for (const auto& c : cs) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream lim;
    lim.precision(3);
    lim << std::fixed << s << " s, limit " << c.limit_s << " s";
    o.expect(s < c.limit_s, "runtime " + lim.str());
    const bool known = kKnownRed.count(c.id) > 0;
    std::string tag;
    if (o.ok) {
      tag = known ? "PASS (unexpected: listed as known red)" : "PASS";
      if (known) status = 1;
    } else {
      tag = known ? "FAIL (known)" : "FAIL";
      if (!known) status = 1;
    }
    std::cout << "criterion " << c.id << ": " << tag << "  " << c.title << "  (" << lim.str() << ")\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  }
  std::cout << (status == 0 ? "acceptance: ok" : "acceptance: FAILED") << "\n";
  return status;
}
