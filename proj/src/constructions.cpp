#include "vallab/constructions.hpp"

#include <cstdlib>
#include <random>
#include <sstream>

#include "vallab/errors.hpp"
#include "vallab/rational.hpp"
#include "vallab/tower.hpp"

namespace vallab {

namespace {

using ST = Tower<Series>;
using PT = Tower<PSeries>;

Integer ipow(unsigned long p, std::size_t k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

Rational inv_ppow(unsigned long p, std::size_t k) { return Rational(Integer(1), ipow(p, k)); }

void require_prime(unsigned long p) {
  if (!is_prime(p)) throw PreconditionError("p must be prime, got " + std::to_string(p));
}

void require_series_budget(const Precision& prec, unsigned long p, std::size_t depth) {
  const Rational need = required_precision(p, depth).series_cap;
  if (prec.series_cap < need) {
    throw PrecisionError("series cap " + to_string(prec.series_cap) + " below the budget " +
                         to_string(need) + " for depth " + std::to_string(depth));
  }
}

void require_padic_budget(const Precision& prec, unsigned long p, std::size_t depth) {
  const long need = required_precision(p, depth).padic_cap;
  if (prec.padic_cap < need) {
    throw PrecisionError("p-adic cap " + std::to_string(prec.padic_cap) + " below the budget " +
                         std::to_string(need) + " for depth " + std::to_string(depth));
  }
}

// X^p + s X + c
template <class T>
std::vector<typename T::Elem> trinomial(const T& t, const typename T::Elem& c, long s,
                                        unsigned long p) {
  std::vector<typename T::Elem> f{t.embed(c), t.from_int(s)};
  for (unsigned long k = 2; k < p; ++k) f.push_back(t.from_int(0));
  f.push_back(t.from_int(1));
  return f;
}

// X^n + c as ground polynomial.
template <class G>
std::vector<G> pure_ground(const G& c, std::size_t n, const typename G::Ctx& ctx) {
  std::vector<G> f(n + 1, G::zero(ctx));
  f[0] = c;
  f[n] = G::one(ctx);
  return f;
}

bool ostrowski_ok(const std::vector<StepInfo>& steps) {
  for (const auto& s : steps) {
    if (s.m != 0 || s.degree != s.e * s.f) return false;
  }
  return true;
}

std::string exact_str(const ValInfo& v) { return v.to_string(); }

bool val_is(const ValInfo& v, const Rational& want) { return v.known && v.value == want; }

CertRow row_of(std::size_t n, const StepInfo& s) {
  CertRow r;
  r.n = n;
  r.degree = s.degree;
  r.e = s.e;
  r.f = s.f;
  r.m = s.m;
  r.kind = s.kind_name();
  r.new_value = to_string(s.new_value);
  if (s.new_residue) r.new_residue = s.new_residue->to_string();
  return r;
}

}  // namespace

Precision required_precision(unsigned long p, std::size_t depth) {
  Precision r;
  r.series_cap = Rational(ipow(p, depth + 1) + 1);
  r.padic_cap = static_cast<long>(ipow(p, depth + 2).get_si());
  return r;
}

Precision parse_precision(const std::string& text, Precision base) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw PreconditionError("bad precision item '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "series") {
      base.series_cap = parse_rational(val);
    } else if (key == "padic") {
      base.padic_cap = std::stol(val);
    } else {
      throw PreconditionError("unknown precision key '" + key + "'");
    }
  }
  return base;
}

Precision default_precision(unsigned long p, std::size_t depth) {
  Precision r = required_precision(p, depth);
  if (const char* env = std::getenv("VALLAB_PRECISION_DEFAULT")) r = parse_precision(env, r);
  return r;
}

// ------------------------------------------------------------- equal char

DefectCertificate build_as_valgp(unsigned long p, std::size_t depth, const Precision& prec) {
  require_prime(p);
  require_series_budget(prec, p, depth);
  SeriesTraits::Ctx ctx;
  ctx.p = static_cast<std::uint32_t>(p);
  ctx.base_field = ResFieldDesc::finite(ctx.p);
  ctx.default_cap = prec.series_cap;
  const ST K(ctx, OGroup::cyclic(1, p));
  std::vector<Series> a{
      Series::monomial(ctx, ResElem::one(ctx.base_field), -1).with_cap(prec.series_cap)};
  for (std::size_t i = 1; i <= depth; ++i) a.push_back(series_pth_root(a.back()));

  std::vector<DepthRecord> recs;
  std::vector<Check> checks;
  std::vector<StepInfo> last_steps;
  ST Kn = K;
  for (std::size_t n = 0; n <= depth; ++n) {
    if (n > 0) {
      Kn = Kn.adjoin_embedded(a[n], pure_ground(-a[n - 1], p, ctx));
      const ValInfo va = a[n].val();
      checks.push_back({"v(a_" + std::to_string(n) + ") = -1/p^" + std::to_string(n),
                        val_is(va, -inv_ppow(p, n)), exact_str(va)});
    }
    auto [L, th] = Kn.adjoin_root(trinomial(Kn, Kn.ground(-a[0]), -1, p));
    recs.push_back({n, L.steps().back(), Kn.value_group(), Kn.residue_field()});
    auto b = th;
    for (std::size_t i = 1; i <= n; ++i) b = b - L.ground(a[i]);
    const ValInfo vb = b.val();
    const std::string ns = std::to_string(n);
    checks.push_back({"v(b_" + ns + ") = -1/p^" + std::to_string(n + 1),
                      val_is(vb, -inv_ppow(p, n + 1)), exact_str(vb)});
    const auto rel = b.pow(p) - b - L.ground(a[n]);
    checks.push_back({"b_" + ns + "^p - b_" + ns + " - a_" + ns + " vanishes", rel.vanishes(),
                      rel.val().to_string()});
    checks.push_back({"step over depth " + ns + " is (p, p, 1, 0)",
                      L.steps().back().degree == p && L.steps().back().e == p &&
                          L.steps().back().f == 1 && L.steps().back().m == 0,
                      row_of(n, L.steps().back()).kind});
    if (n == depth) last_steps = L.steps();
  }
  DefectCertificate c = limit_claim("as-valgp", p, recs);
  c.params = {{"depth", depth}, {"a_0", a[0].to_string()}};
  c.precision = prec;
  c.checks = std::move(checks);
  c.steps = last_steps;
  c.check("every step has m = 0", ostrowski_ok(c.steps));
  c.check("absorption at every depth", c.absorption.size() + 1 == recs.size());
  return c;
}

DefectCertificate build_lemma_3_3(unsigned long p, const Precision& prec, long vd) {
  require_prime(p);
  if (vd >= 0) throw PreconditionError("requires vd < 0 (d of negative value), got vd = " + std::to_string(vd));
  require_series_budget(prec, p, 0);
  SeriesTraits::Ctx ctx;
  ctx.p = static_cast<std::uint32_t>(p);
  ctx.base_field = ResFieldDesc::ratfun(ctx.p);
  ctx.default_cap = prec.series_cap;
  const ST K(ctx, OGroup::cyclic(1, p));
  const ResElem u = ResElem::gen(ctx.base_field);
  const Series d = Series::monomial(ctx, ResElem::one(ctx.base_field), Rational(vd));
  const Series c0 = Series::monomial(ctx, u, 0).with_cap(prec.series_cap);
  auto [L, th] = K.adjoin_root(trinomial(K, K.ground(-(d.pow(p) * c0)), -1, p));
  const StepInfo& st = L.steps().back();
  const ResFieldDesc F1 = ResFieldDesc::perflevel(ctx.p, 1);
  const ResElem xi = ResElem::u_power(F1, 1, 1, p);

  DefectCertificate c = limit_claim("lemma33", p, {{0, st, K.value_group(), K.residue_field()}});
  c.params = {{"c", "u"}, {"d", d.to_string()}};
  c.precision = prec;
  c.steps = L.steps();
  c.check("residue step with f = p", st.kind == StepKind::residue && st.f == p && st.e == 1,
          st.kind_name());
  c.check("new residue = u^(1/p)", st.new_residue && *st.new_residue == xi,
          st.new_residue ? st.new_residue->to_string() : "none");
  const auto idx = index(L.value_group(), K.value_group());
  c.check("value group index 1", idx && *idx == 1, idx ? idx->get_str() : "infinite");
  c.check("residue field = Kv(u^(1/p))", L.residue_field() == F1, L.residue_field().to_string());
  const ResElem r = (th * L.ground(d.inverse())).residue();
  c.check("residue(theta/d) = u^(1/p)", r == xi, r.to_string());
  c.check("every step has m = 0", ostrowski_ok(c.steps));
  return c;
}

DefectCertificate build_as_resf(unsigned long p, std::size_t depth, const Precision& prec) {
  require_prime(p);
  require_series_budget(prec, p, depth);
  SeriesTraits::Ctx ctx;
  ctx.p = static_cast<std::uint32_t>(p);
  ctx.base_field = ResFieldDesc::ratfun(ctx.p);
  ctx.default_cap = prec.series_cap;
  const ST K(ctx, OGroup::cyclic(1, p, true));
  std::vector<Series> a{
      Series::monomial(ctx, ResElem::one(ctx.base_field), -1).with_cap(prec.series_cap)};
  for (std::size_t i = 1; i <= depth + 1; ++i) a.push_back(series_pth_root(a.back()));
  std::vector<Series> cs;
  for (std::size_t i = 0; i <= depth; ++i) {
    const auto F = ResFieldDesc::perflevel(ctx.p, static_cast<unsigned>(i));
    cs.push_back(Series::monomial(ctx, ResElem::u_power(F, 1, 1, ipow(p, i).get_ui()), 0));
  }

  std::vector<DepthRecord> recs;
  std::vector<Check> checks;
  std::vector<StepInfo> last_steps;
  ST Kn = K;
  for (std::size_t n = 0; n <= depth; ++n) {
    const std::string ns = std::to_string(n);
    if (n > 0) Kn = Kn.adjoin_embedded(cs[n], pure_ground(-cs[n - 1], p, ctx));
    const auto idx = index(Kn.value_group(), K.value_group());
    checks.push_back({"value group index 1 at depth " + ns, idx && *idx == 1,
                      idx ? idx->get_str() : "infinite"});
    checks.push_back({"residue field level " + ns + " at depth " + ns,
                      Kn.residue_field().is_function_field() && Kn.residue_field().level() == n,
                      Kn.residue_field().to_string()});
    auto [L, th] = Kn.adjoin_root(trinomial(Kn, Kn.ground(-(a[0] * cs[0])), -1, p));
    recs.push_back({n, L.steps().back(), Kn.value_group(), Kn.residue_field()});
    auto b = th;
    for (std::size_t i = 1; i <= n; ++i) b = b - L.ground(a[i] * cs[i]);
    const ResElem r = (b * L.ground(a[n + 1].inverse())).residue();
    const auto Fn = ResFieldDesc::perflevel(ctx.p, static_cast<unsigned>(n + 1));
    const ResElem want = ResElem::u_power(Fn, 1, 1, ipow(p, n + 1).get_ui());
    checks.push_back({"residue(b_" + ns + "/a_" + std::to_string(n + 1) + ") = u^(1/p^" +
                          std::to_string(n + 1) + ")",
                      r == want, r.to_string()});
    const auto rel = b.pow(p) - b - L.ground(a[n] * cs[n]);
    checks.push_back({"b_" + ns + "^p - b_" + ns + " - a_" + ns + "c_" + ns + " vanishes",
                      rel.vanishes(), rel.val().to_string()});
    const StepInfo& st = L.steps().back();
    checks.push_back({"step over depth " + ns + " is (p, 1, p, 0)",
                      st.degree == p && st.e == 1 && st.f == p && st.m == 0, st.kind_name()});
    if (n == depth) last_steps = L.steps();
  }
  DefectCertificate c = limit_claim("as-resf", p, recs);
  c.params = {{"depth", depth}, {"a_0", a[0].to_string()}, {"c_0", "u"}};
  c.precision = prec;
  c.checks = std::move(checks);
  c.steps = last_steps;
  c.check("every step has m = 0", ostrowski_ok(c.steps));
  return c;
}

// ------------------------------------------------------------ mixed char

namespace {

struct MixedBase {
  PT tower;
  PT::Elem pi;  // zeta_p - 1
};

// Q_p, then p^{1/q} when q > 1, then zeta_p for odd p.
MixedBase mixed_base(const PSeriesTraits::Ctx& ctx, const Integer& q) {
  const unsigned long p = ctx.p;
  PT K(ctx, OGroup::cyclic(1, p));
  if (q > 1) {
    const PSeries w = PSeries::monomial(ctx, LaurentQ::constant(1), Rational(Integer(1), q));
    K = K.adjoin_embedded(w, pure_ground(PSeries::from_int(ctx, -static_cast<long>(p)),
                                         q.get_ui(), ctx));
  }
  if (p == 2) return {K, K.from_int(-2)};
  std::vector<PT::Elem> phi;
  for (unsigned long k = 1; k <= p; ++k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), p, k);
    phi.push_back(K.ground(PSeries::from_int(ctx, b.get_si())));
  }
  auto [F0, pi] = K.adjoin_root(phi);
  return {F0, pi};
}

}  // namespace

DefectCertificate build_kummer_valgp(unsigned long p, std::size_t depth, const Precision& prec) {
  require_prime(p);
  require_padic_budget(prec, p, depth);
  PSeriesTraits::Ctx ctx;
  ctx.p = static_cast<std::uint32_t>(p);
  ctx.has_u = false;
  ctx.default_cap = prec.padic_cap;
  auto [F0, pi] = mixed_base(ctx, 1);
  const auto a0 = pi.inverse();
  const Rational alpha = a0.val().get();
  if (!(alpha >= -1 && alpha < 0)) throw PreconditionError("requires -vp <= va_0 < 0");
  if (contains(F0.value_group(), alpha / Rational(static_cast<long>(p)))) {
    throw PreconditionError("requires va_0/p outside the value group");
  }
  std::vector<Check> checks;
  checks.push_back({"-vp <= v(a_0) < 0 and v(a_0)/p not in vF_0", true, to_string(alpha)});
  std::vector<PT> towers{F0};
  std::vector<PT::Elem> a{a0};
  for (std::size_t i = 1; i <= depth; ++i) {
    const PT& T = towers.back();
    const auto c = i == 1 ? -T.embed(a0) : T.embed(a[i - 1]);
    auto [Ti, ai] = T.adjoin_root(trinomial(T, c, -1, p));
    const ValInfo v = ai.val();
    checks.push_back({"v(a_" + std::to_string(i) + ") = alpha/p^" + std::to_string(i),
                      val_is(v, alpha * inv_ppow(p, i)), exact_str(v)});
    towers.push_back(Ti);
    a.push_back(ai);
  }
  std::vector<DepthRecord> recs;
  std::vector<StepInfo> last_steps;
  for (std::size_t k = 0; k <= depth; ++k) {
    const PT& T = towers[k];
    const std::string ks = std::to_string(k);
    std::vector<PT::Elem> f(p + 1, T.from_int(0));
    f[0] = -T.embed(a0);
    f[p] = T.from_int(1);
    auto [L, A] = T.adjoin_root(f);
    recs.push_back({k, L.steps().back(), T.value_group(), T.residue_field()});
    auto b = A;
    for (std::size_t i = 1; i <= k; ++i) b = b - L.embed(a[i]);
    const ValInfo vb = b.val();
    checks.push_back({"v(b_" + ks + ") = alpha/p^" + std::to_string(k + 1),
                      val_is(vb, alpha * inv_ppow(p, k + 1)), exact_str(vb)});
    if (k >= 1) {
      const auto cong = b.pow(p) + L.embed(a[k]);
      const ValInfo vc = cong.val();
      const auto lo = vc.lower();
      checks.push_back({"v(b_" + ks + "^p + a_" + ks + ") >= 0", !lo || *lo >= 0,
                        exact_str(vc)});
    }
    const StepInfo& st = L.steps().back();
    checks.push_back({"top step over depth " + ks + " defectless", st.m == 0,
                      row_of(k, st).kind});
    if (k == depth) last_steps = L.steps();
  }
  DefectCertificate c = limit_claim("kummer-valgp", p, recs);
  c.params = {{"depth", depth}, {"a_0", "(zeta_p - 1)^-1"}, {"alpha", to_string(alpha)}};
  c.precision = prec;
  c.checks = std::move(checks);
  c.steps = last_steps;
  c.check("every step has m = 0", ostrowski_ok(c.steps));
  return c;
}

DefectCertificate build_2ext(unsigned long p, const Precision& prec, const Rational& vd_in) {
  require_prime(p);
  const Rational vd = vd_in != 0 ? vd_in
                      : p == 2   ? -inv_ppow(p, 3)
                                 : Rational(-inv_ppow(p, 2) / Rational(static_cast<long>(p - 1)));
  const Rational bound = inv_ppow(p, 2);
  if (!(vd > -bound && vd < 0)) {
    throw PreconditionError("requires -vp/p^2 < vd < 0, got vd = " + to_string(vd));
  }
  // vd = s/(p-1) + r/q with q = p^k, k >= 2: d = (zeta_p - 1)^s * p^(r/q).
  const Integer pz = static_cast<long>(p);
  Integer m = vd.get_den(), q = 1;
  while (m % pz == 0) {
    m /= pz;
    q *= pz;
  }
  if (q < pz * pz) q = pz * pz;
  const long pm1 = static_cast<long>(p - 1);
  if (pm1 % m.get_si() != 0) {
    throw PreconditionError("requires vd in the value group (1/((p-1)p^k))Z, got vd = " + to_string(vd));
  }
  const Integer N = Integer(vd.get_num() * Integer(q * pm1 / Integer(vd.get_den())));
  long s_exp = 0;
  if (p != 2) {
    while (Integer(Integer(N - s_exp * q) % pm1) != 0) ++s_exp;
  }
  const Integer r_exp = (N - s_exp * q) / pm1;
  require_padic_budget(prec, p, 0);
  PSeriesTraits::Ctx ctx;
  ctx.p = static_cast<std::uint32_t>(p);
  ctx.has_u = true;
  ctx.default_cap = prec.padic_cap;
  auto [K, pi] = mixed_base(ctx, q);
  const auto d = (p == 2 ? K.one() : pi.pow(static_cast<unsigned long>(s_exp))) *
                 K.ground(PSeries::monomial(ctx, LaurentQ::constant(1), Rational(r_exp, q)));
  const auto a = K.ground(PSeries::monomial(ctx, LaurentQ::monomial(1, 1), 0));
  const auto adp2 = a * d.pow(ipow(p, 2).get_ui());
  const auto dp_inv = d.pow(p).inverse();

  auto [E, b] = K.adjoin_root([&] {
    std::vector<PT::Elem> f(p + 1, K.from_int(0));
    f[0] = -adp2;
    f[p] = K.from_int(1);
    return f;
  }());
  auto [E2, c] = K.adjoin_root(trinomial(K, -adp2, -1, p));
  auto [EE, c2] = E.adjoin_root(trinomial(E, -adp2, -1, p));

  const auto F1 = ResFieldDesc::perflevel(ctx.p, 1);
  const auto F2 = ResFieldDesc::perflevel(ctx.p, 2);
  const ResElem xi1 = ResElem::u_power(F1, 1, 1, p);
  const ResElem xi2 = ResElem::u_power(F2, 1, 1, ipow(p, 2).get_ui());

  DefectCertificate cert;
  cert.construction = "two-ext";
  cert.p = p;
  cert.params = {{"a", "u"},
                 {"vd", to_string(vd)},
                 {"d", p == 2 ? "p^(" + to_string(Rational(r_exp, q)) + ")"
                              : "(zeta_p - 1)^" + std::to_string(s_exp) + " * p^(" +
                                    to_string(Rational(r_exp, q)) + ")"}};
  cert.precision = prec;
  cert.rows = {row_of(0, E.steps().back()), row_of(0, E2.steps().back()),
               row_of(1, EE.steps().back())};
  cert.steps = EE.steps();
  auto is_p1p0 = [&](const StepInfo& s) {
    return s.degree == p && s.e == 1 && s.f == p && s.m == 0 && s.kind == StepKind::residue;
  };
  cert.check("E step is (p, 1, p, 0)", is_p1p0(E.steps().back()), E.steps().back().kind_name());
  cert.check("E' step is (p, 1, p, 0)", is_p1p0(E2.steps().back()), E2.steps().back().kind_name());
  const ResElem rb = (b * E.embed(dp_inv)).residue();
  const ResElem rc = (c * E2.embed(dp_inv)).residue();
  cert.check("residue(b/d^p) = u^(1/p)", rb == xi1, rb.to_string());
  cert.check("residue(c/d^p) = u^(1/p)", rc == xi1, rc.to_string());
  const ValInfo vc = c.val();
  cert.check("v(d) = vd", val_is(d.val(), vd), exact_str(d.val()));
  cert.check("v(c) = p*vd", val_is(vc, vd * Rational(static_cast<long>(p))), exact_str(vc));
  const auto e = EE.embed(b) - c2;
  const ValInfo vsum = (e.pow(p) + EE.embed(c2)).val();
  const ValInfo vc2 = c2.val();
  cert.check("v(e^p + c) > v(c)",
             vc2.known && (!vsum.lower() || *vsum.lower() > vc2.value),
             vsum.to_string());
  const ResElem re = (e * EE.embed(d.inverse())).residue();
  cert.check("residue(e/d) generates Kv(u^(1/p^2))", minimal_level(re) == 2, re.to_string());
  cert.check("residue(e/d) = u^(1/p^2)", re == xi2, re.to_string());
  const StepInfo& top = EE.steps().back();
  cert.check("E'.E over E has degree p", top.degree == p, top.kind_name());
  cert.check("every step has m = 0", ostrowski_ok(cert.steps));
  cert.limit_claim = "E and E' are linearly disjoint over K: the compositum has degree p over E";
  return cert;
}

DefectCertificate build_kummer_resf(unsigned long p, std::size_t depth, const Precision& prec) {
  require_prime(p);
  require_padic_budget(prec, p, depth);
  PSeriesTraits::Ctx ctx;
  ctx.p = static_cast<std::uint32_t>(p);
  ctx.has_u = true;
  ctx.default_cap = prec.padic_cap;
  auto [K0, pi] = mixed_base(ctx, ipow(p, depth + 1));
  std::vector<PSeries> dinv;  // d_i^{-1}, d_i = p^{-1/p^i}
  for (std::size_t i = 0; i <= depth + 1; ++i) {
    dinv.push_back(PSeries::monomial(ctx, LaurentQ::constant(1), inv_ppow(p, i)));
  }
  const PSeries d0 = PSeries::monomial(ctx, LaurentQ::constant(1), -1);
  const PSeries a0 = PSeries::monomial(ctx, LaurentQ::monomial(1, 1), 0);
  const PSeries b0 = a0 * d0;
  std::vector<Check> checks;
  std::vector<PT> towers{K0};
  std::vector<PT::Elem> bs{K0.ground(b0)};
  for (std::size_t i = 1; i <= depth; ++i) {
    const PT& T = towers.back();
    const std::string is = std::to_string(i);
    const auto c = i == 1 ? -T.embed(bs[0]) : T.embed(bs[i - 1]);
    auto [Ti, bi] = T.adjoin_root(trinomial(T, c, -1, p));
    const ValInfo vb = bi.val();
    checks.push_back({"v(b_" + is + ") = vd_0/p^" + is, val_is(vb, -inv_ppow(p, i)), exact_str(vb)});
    const auto ai = bi * Ti.ground(dinv[i]);
    const ValInfo va = ai.val();
    checks.push_back({"v(a_" + is + ") = 0", val_is(va, 0), exact_str(va)});
    const ResElem r = ai.residue();
    checks.push_back({"residue(a_" + is + ") generates Kv(eta^(1/p^" + is + "))",
                      minimal_level(r) == i, r.to_string()});
    const StepInfo& st = Ti.steps().back();
    checks.push_back({"b_" + is + " step is (p, 1, p, 0)",
                      st.kind == StepKind::residue && st.f == p && st.m == 0, st.kind_name()});
    towers.push_back(Ti);
    bs.push_back(bi);
  }
  std::vector<DepthRecord> recs;
  std::vector<StepInfo> last_steps;
  for (std::size_t k = 0; k <= depth; ++k) {
    const PT& T = towers[k];
    const std::string ks = std::to_string(k);
    std::vector<PT::Elem> f(p + 1, T.from_int(0));
    f[0] = T.ground(-b0);
    f[p] = T.from_int(1);
    auto [L, B] = T.adjoin_root(f);
    recs.push_back({k, L.steps().back(), T.value_group(), T.residue_field()});
    if (k == 0) {
      const ValInfo vb = B.val();
      checks.push_back({"v(b) = vd_0/p", val_is(vb, -inv_ppow(p, 1)), exact_str(vb)});
    }
    auto ck = B;
    for (std::size_t i = 1; i <= k; ++i) ck = ck - L.embed(bs[i]);
    if (k >= 1) {
      const ValInfo vc = (ck.pow(p) + L.embed(bs[k])).val();
      const auto lo = vc.lower();
      checks.push_back({"v(c_" + ks + "^p + b_" + ks + ") >= 0", !lo || *lo >= 0, exact_str(vc)});
    }
    const ResElem r = (ck * L.ground(dinv[k + 1])).residue();
    checks.push_back({"residue(c_" + ks + "/d_" + std::to_string(k + 1) +
                          ") generates Kv(eta^(1/p^" + std::to_string(k + 1) + "))",
                      minimal_level(r) == k + 1, r.to_string()});
    const StepInfo& st = L.steps().back();
    checks.push_back({"top step over depth " + ks + " has m = 0", st.m == 0, st.kind_name()});
    if (k == depth) last_steps = L.steps();
  }
  DefectCertificate c = limit_claim("kummer-resf", p, recs);
  c.params = {{"depth", depth}, {"a_0", "u"}, {"d_i", "p^(-1/p^i)"}};
  c.precision = prec;
  c.checks = std::move(checks);
  c.steps = last_steps;
  c.check("every step has m = 0", ostrowski_ok(c.steps));
  return c;
}

// ----------------------------------------------------------------- misc

FieldDescriptor build_counterexample_descriptor(const FieldDescriptor& core) {
  if (core.flags.tame == Verdict::no) throw PreconditionError("core descriptor must not be flagged non-tame");
  FieldDescriptor outer;
  outer.name = "Z outer, residue characteristic 0";
  outer.characteristic = 0;
  outer.res_char = 0;
  outer.value_group = OGroup::cyclic(1);
  outer.flags.henselian = Verdict::yes;
  outer.flags.defectless = Verdict::yes;
  outer.flags.frobenius_surjective = Verdict::yes;
  outer.residue_perfect = Verdict::yes;
  outer.sources["henselian"] = "outer place chosen henselian";
  outer.sources["defectless"] = "residue characteristic 0: every finite extension is defectless";
  FieldDescriptor out = compose(outer, core);
  out.name = "Z lex (" + core.name + ")";
  return out;
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"as-valgp",     "lemma33",  "as-resf",
                                              "kummer-valgp", "two-ext",  "kummer-resf"};
  return names;
}

DefectCertificate build_example(const std::string& name, unsigned long p, std::size_t depth,
                                const Precision& prec) {
  if (name == "as-valgp") return build_as_valgp(p, depth, prec);
  if (name == "lemma33") return build_lemma_3_3(p, prec);
  if (name == "as-resf") return build_as_resf(p, depth, prec);
  if (name == "kummer-valgp") return build_kummer_valgp(p, depth, prec);
  if (name == "two-ext") return build_2ext(p, prec);
  if (name == "kummer-resf") return build_kummer_resf(p, depth, prec);
  throw PreconditionError("unknown example '" + name + "'");
}

CongruenceReport congruence_trials(unsigned long p, std::size_t trials, std::uint64_t seed) {
  require_prime(p);
  PSeriesTraits::Ctx ctx;
  ctx.p = static_cast<std::uint32_t>(p);
  ctx.has_u = true;
  ctx.default_cap = 64;
  std::mt19937_64 rng(seed ^ (p * 0x9e3779b97f4a7c15ULL));
  std::uniform_int_distribution<int> count(1, 4), terms(1, 3), coef(-6, 6), upow(-1, 2), num(0, 12);
  const Rational lowest = -Rational(1) / Rational(static_cast<long>(p));
  const Integer den = ipow(p, 2);
  CongruenceReport rep;
  rep.p = p;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<PSeries> cs;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      PSeries c = PSeries::zero(ctx);
      const int nt = terms(rng);
      for (int j = 0; j < nt; ++j) {
        int k = coef(rng);
        if (k == 0) k = 1;
        const Rational g = lowest + Rational(Integer(num(rng)), den);
        c = c + PSeries::monomial(ctx, LaurentQ::monomial(Rational(k), upow(rng)), g);
      }
      if (c.vanishes()) c = PSeries::monomial(ctx, LaurentQ::constant(1), lowest);
      cs.push_back(c);
    }
    PSeries sum = PSeries::zero(ctx), pows = PSeries::zero(ctx);
    bool pre_ok = true;
    for (const auto& c : cs) {
      const auto lo = c.val().lower();
      if (lo && *lo < lowest) pre_ok = false;
      sum = sum + c;
      pows = pows + c.pow(p);
    }
    const PSeries diff = sum.pow(p) - pows;
    const auto lo = diff.val().lower();
    ++rep.trials;
    if (pre_ok && (!lo || *lo >= 0)) {
      ++rep.passed;
    } else {
      rep.failures.push_back("trial " + std::to_string(t) + ": v = " + diff.val().to_string());
    }
  }
  return rep;
}

}  // namespace vallab
