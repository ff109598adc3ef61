#include "vallab/verify.hpp"

#include <numeric>
#include <random>

#include "vallab/classify.hpp"
#include "vallab/constructions.hpp"
#include "vallab/errors.hpp"
#include "vallab/newton.hpp"
#include "vallab/rational.hpp"

namespace vallab {

void SuiteResult::record(bool ok, const std::string& what) {
  if (ok) {
    ++passed;
  } else {
    ++failed;
    failures.push_back(what);
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ostrowski", "congruence", "newton", "ogroup",
                                              "implications"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, const std::string& corpus_dir) {
  if (name == "ostrowski") return ostrowski_suite();
  if (name == "congruence") return congruence_suite(seed);
  if (name == "newton") return newton_suite(seed);
  if (name == "ogroup") return ogroup_suite(seed);
  if (name == "implications") return implications_suite(corpus_dir);
  throw PreconditionError("unknown suite '" + name + "'");
}

SuiteResult ostrowski_suite() {
  SuiteResult r;
  r.suite = "ostrowski";
  for (const auto& ex : example_names()) {
    for (unsigned long p : {2UL, 3UL}) {
      const std::size_t depth = 2;
      const std::string tag = ex + " p=" + std::to_string(p);
      try {
        const auto c = build_example(ex, p, depth, required_precision(p, depth));
        for (const auto& s : c.steps) {
          r.record(s.m == 0 && s.degree == s.e * s.f,
                   tag + ": step degree " + std::to_string(s.degree) + " e=" + std::to_string(s.e) +
                       " f=" + std::to_string(s.f) + " m=" + std::to_string(s.m));
        }
      } catch (const Error& e) {
        r.record(false, tag + ": " + e.what());
      }
    }
  }
  return r;
}

SuiteResult congruence_suite(std::uint64_t seed, std::size_t trials) {
  SuiteResult r;
  r.suite = "congruence";
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    const auto rep = congruence_trials(p, trials, seed);
    for (std::size_t i = 0; i < rep.passed; ++i) r.record(true, "");
    for (const auto& f : rep.failures) r.record(false, "p=" + std::to_string(p) + " " + f);
  }
  return r;
}

SuiteResult newton_suite(std::uint64_t seed, std::size_t cases) {
  SuiteResult r;
  r.suite = "newton";
  std::mt19937_64 rng(seed + 1);
  std::uniform_int_distribution<int> deg(1, 6), num(-6, 6), den(1, 3), coin(0, 9);
  for (std::size_t t = 0; t < cases; ++t) {
    const int n = deg(rng);
    std::vector<CoeffValue> cs;
    for (int i = 0; i <= n; ++i) {
      const Rational v = make_rational(num(rng), den(rng));
      if (i < n && coin(rng) < 3) {
        cs.push_back(CoeffValue::exact_zero());
      } else {
        cs.push_back(CoeffValue::of(v));
      }
    }
    const Polygon P = polygon(cs);
    std::size_t len = 0;
    LexValue sum = LexValue::zero(1);
    for (const auto& [v, m] : root_values(P)) {
      len += m;
      sum = sum + v * Rational(static_cast<long>(m));
    }
    const std::size_t z = P.zero_order;
    const std::string tag = "case " + std::to_string(t);
    r.record(len + z == static_cast<std::size_t>(n), tag + ": root count");
    r.record(sum == cs[z].v - cs[n].v, tag + ": sum of root values");
    // Lower hull: every known point on or above every segment line.
    bool above = true;
    for (std::size_t k = 0; k + 1 < P.hull.size(); ++k) {
      const auto& a = P.hull[k];
      const auto& b = P.hull[k + 1];
      const LexValue s = (b.v - a.v) / Rational(static_cast<long>(b.i - a.i));
      for (std::size_t i = z; i < cs.size(); ++i) {
        if (cs[i].kind != CoeffValue::Kind::known) continue;
        const LexValue line = a.v + s * (Rational(static_cast<long>(i)) - Rational(static_cast<long>(a.i)));
        if (cs[i].v < line) above = false;
      }
    }
    r.record(above, tag + ": hull below all points");
  }
  return r;
}

namespace {

std::vector<long> scaled(const LexValue& v, const Integer& D) {
  std::vector<long> out;
  for (const auto& c : v.coords()) {
    const Rational s = c * Rational(D);
    out.push_back(s.get_num().get_si());
  }
  return out;
}

Integer common_den(const std::vector<LexValue>& vs) {
  Integer D = 1;
  for (const auto& v : vs) {
    for (const auto& c : v.coords()) D = lcm(D, Integer(c.get_den()));
  }
  return D;
}

bool enumerate_hits(const std::vector<std::vector<long>>& g, const std::vector<long>& x, long box) {
  const std::size_t k = g.size(), r = x.size();
  std::vector<long> a(k, -box);
  if (k == 0) return std::all_of(x.begin(), x.end(), [](long c) { return c == 0; });
  for (;;) {
    bool eq = true;
    for (std::size_t j = 0; j < r && eq; ++j) {
      long s = 0;
      for (std::size_t i = 0; i < k; ++i) s += a[i] * g[i][j];
      eq = s == x[j];
    }
    if (eq) return true;
    std::size_t i = 0;
    while (i < k && ++a[i] > box) a[i++] = -box;
    if (i == k) return false;
  }
}

}  // namespace

bool brute_contains(const std::vector<LexValue>& gens, const LexValue& x, long box) {
  std::vector<LexValue> all = gens;
  all.push_back(x);
  const Integer D = common_den(all);
  std::vector<std::vector<long>> g;
  for (const auto& v : gens) g.push_back(scaled(v, D));
  const std::vector<long> y = scaled(x, D);
  const std::size_t r = y.size();
  if (r > 2 || g.size() < r) return enumerate_hits(g, y, box);
  // First r generators square: extra coefficients range over residues mod the determinant.
  const long det = r == 1 ? g[0][0] : g[0][0] * g[1][1] - g[0][1] * g[1][0];
  if (det == 0) return enumerate_hits(g, y, box);
  const long N = std::labs(det);
  const std::size_t extra = g.size() - r;
  std::vector<long> a(extra, 0);
  for (;;) {
    std::vector<long> z = y;
    for (std::size_t i = 0; i < extra; ++i) {
      for (std::size_t j = 0; j < r; ++j) z[j] -= a[i] * g[r + i][j];
    }
    bool ok;
    if (r == 1) {
      ok = z[0] % g[0][0] == 0;
    } else {
      const long c0 = z[0] * g[1][1] - z[1] * g[1][0];
      const long c1 = g[0][0] * z[1] - g[0][1] * z[0];
      ok = c0 % det == 0 && c1 % det == 0;
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < extra && ++a[i] >= N) a[i++] = 0;
    if (i == extra) return false;
  }
}

std::size_t brute_index(const std::vector<LexValue>& g, const std::vector<LexValue>& h, long gbox,
                        long hbox) {
  std::vector<LexValue> all = g;
  all.insert(all.end(), h.begin(), h.end());
  const Integer D = common_den(all);
  std::vector<std::vector<long>> gs, hs;
  for (const auto& v : g) gs.push_back(scaled(v, D));
  for (const auto& v : h) hs.push_back(scaled(v, D));
  const std::size_t k = gs.size(), r = gs.front().size();
  std::vector<std::vector<long>> reps;
  std::vector<long> a(k, -gbox);
  for (;;) {
    std::vector<long> x(r, 0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < r; ++j) x[j] += a[i] * gs[i][j];
    }
    bool found = false;
    for (const auto& rep : reps) {
      std::vector<long> d(r);
      for (std::size_t j = 0; j < r; ++j) d[j] = x[j] - rep[j];
      if (enumerate_hits(hs, d, hbox)) {
        found = true;
        break;
      }
    }
    if (!found) reps.push_back(x);
    std::size_t i = 0;
    while (i < k && ++a[i] > gbox) a[i++] = -gbox;
    if (i == k) break;
  }
  return reps.size();
}

SuiteResult ogroup_suite(std::uint64_t seed, std::size_t cases) {
  SuiteResult res;
  res.suite = "ogroup";
  std::mt19937_64 rng(seed + 2);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), rk(1, 2), small(-2, 2), qden(1, 6);
  auto rnd_value = [&](std::size_t r, bool wide) {
    std::vector<Rational> cs;
    for (std::size_t j = 0; j < r; ++j) cs.push_back(make_rational(num(rng), wide ? qden(rng) : den(rng)));
    return LexValue(cs);
  };
  for (std::size_t t = 0; t < cases; ++t) {
    const std::size_t r = static_cast<std::size_t>(rk(rng));
    std::vector<LexValue> g;
    for (;;) {
      g.clear();
      for (std::size_t i = 0; i < r; ++i) g.push_back(rnd_value(r, false));
      const Rational det = r == 1 ? g[0][0] : g[0][0] * g[1][1] - g[0][1] * g[1][0];
      if (det != 0) break;
    }
    std::vector<LexValue> gx = g;
    if (t % 2 == 1) gx.push_back(rnd_value(r, false));
    const OGroup G(r, gx, {}, 1);
    const std::string tag = "case " + std::to_string(t);
    for (int q = 0; q < 4; ++q) {
      LexValue x = LexValue::zero(r);
      if (q < 2) {
        for (const auto& v : gx) x = x + v * Rational(small(rng));
      } else {
        x = rnd_value(r, true);
      }
      res.record(contains(G, x) == brute_contains(gx, x), tag + ": contains " + x.to_string());
    }
    // H = M g with M small and nonsingular.
    std::vector<std::vector<long>> M;
    long det = 0;
    while (det == 0 || std::labs(det) > 6) {
      M.assign(r, std::vector<long>(r));
      for (auto& row : M) {
        for (auto& e : row) e = small(rng);
      }
      det = r == 1 ? M[0][0] : M[0][0] * M[1][1] - M[0][1] * M[1][0];
    }
    std::vector<LexValue> h;
    for (std::size_t i = 0; i < r; ++i) {
      LexValue v = LexValue::zero(r);
      for (std::size_t j = 0; j < r; ++j) v = v + g[j] * Rational(M[i][j]);
      h.push_back(v);
    }
    const OGroup G0(r, g, {}, 1), H(r, h, {}, 1);
    const auto idx = index(G0, H);
    const std::size_t brute = brute_index(g, h);
    res.record(idx && *idx == static_cast<long>(brute),
               tag + ": index " + (idx ? idx->get_str() : "inf") + " vs " + std::to_string(brute));
    if (r == 2) {
      const OGroup H1(r, {h[0]}, {}, 1);
      res.record(!index(G0, H1), tag + ": rank-deficient subgroup has infinite index");
    }
  }
  return res;
}

SuiteResult implications_suite(const std::string& corpus_dir) {
  SuiteResult r;
  r.suite = "implications";
  const auto corpus = load_corpus(corpus_dir);
  const auto audit = audit_implications(corpus);
  for (const auto& e : audit.entries) {
    if (e.status == "skipped") continue;
    r.record(e.status == "holds", e.descriptor + ": " + e.implication);
  }
  return r;
}

}  // namespace vallab
