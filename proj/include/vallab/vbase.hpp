#pragma once

// Base valued fields. Series: truncated generalized power series sum c_g t^g
// over a residue field (equal characteristic, v(t) = 1). PSeries: truncated
// sums sum p^g q_g(u) with q_g primitive Laurent polynomials over Q (mixed
// characteristic, v(p) = 1, u a Gauss-valued unit with transcendental residue).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "vallab/errors.hpp"
#include "vallab/rational.hpp"
#include "vallab/resfield.hpp"

namespace vallab {

/// Value of an element. When `known` is false the element vanishes at the
/// stored precision and `bound` (if present) is a lower bound.
struct ValInfo {
  bool known = false;
  Rational value;
  std::optional<Rational> bound;

  static ValInfo exact(const Rational& v) { return {true, v, std::nullopt}; }
  static ValInfo at_least(std::optional<Rational> b) { return {false, 0, std::move(b)}; }
  // Value, throwing PrecisionError when indeterminate.
  const Rational& get() const;
  // `value` when known, otherwise bound (nullopt means +infinity).
  std::optional<Rational> lower() const;
  std::string to_string() const;
};

struct Precision {
  Rational series_cap = 0;
  long padic_cap = 0;
};

/// Laurent polynomial in u with rational coefficients.
class LaurentQ {
 public:
  using Map = std::map<long, Rational>;
  LaurentQ() = default;
  explicit LaurentQ(Map m);
  static LaurentQ constant(const Rational& c);
  static LaurentQ monomial(const Rational& c, long e);

  const Map& terms() const { return m_; }
  bool is_zero() const { return m_.empty(); }
  bool is_monomial() const { return m_.size() == 1; }
  // min v_p over coefficients; zero polynomial not allowed.
  long content(unsigned long p) const;

  LaurentQ operator+(const LaurentQ& o) const;
  LaurentQ operator-(const LaurentQ& o) const;
  LaurentQ operator-() const;
  LaurentQ operator*(const LaurentQ& o) const;
  LaurentQ scale(const Rational& s) const;
  bool operator==(const LaurentQ& o) const { return m_ == o.m_; }

  // Reduction of a p-integral polynomial into F_p(u), or F_p when has_u is false.
  ResElem reduce(std::uint32_t p, bool has_u) const;
  std::string to_string() const;

 private:
  Map m_;
};

struct SeriesTraits {
  using Coeff = ResElem;
  struct Ctx {
    std::uint32_t p = 2;
    ResFieldDesc base_field = ResFieldDesc::finite(2);
    Rational default_cap = 64;
    unsigned max_level = 32;
  };
  static constexpr const char* var = "t";
  static bool is_zero(const Coeff& c) { return c.is_zero(); }
  static Coeff from_int(const Ctx& ctx, long n) { return ResElem::from_int(ctx.base_field, n); }
  static Coeff invert_lead(const Coeff& c) { return c.inverse(); }
  static bool is_monomial(const Coeff&) { return true; }
  static void carry(std::map<Rational, Coeff>&, const Ctx&) {}
  static std::string coeff_string(const Coeff& c) { return c.to_string(); }
};

struct PSeriesTraits {
  using Coeff = LaurentQ;
  struct Ctx {
    std::uint32_t p = 2;
    bool has_u = false;
    Rational default_cap = 32;
  };
  static constexpr const char* var = "p";
  static bool is_zero(const Coeff& c) { return c.is_zero(); }
  static Coeff from_int(const Ctx&, long n) { return LaurentQ::constant(Rational(n)); }
  static Coeff invert_lead(const Coeff& c);
  static bool is_monomial(const Coeff& c) { return c.is_monomial(); }
  // Moves p-content of coefficients into the exponent.
  static void carry(std::map<Rational, Coeff>& terms, const Ctx& ctx);
  static std::string coeff_string(const Coeff& c) { return c.to_string(); }
};

/// Finite sum of c_g T^g, terms with g >= cap unknown; cap == nullopt is exact.
template <class Traits>
class GenSeries {
 public:
  using Coeff = typename Traits::Coeff;
  using Ctx = typename Traits::Ctx;
  using Terms = std::map<Rational, Coeff>;

  GenSeries() = default;
  GenSeries(Ctx ctx, Terms terms, std::optional<Rational> cap)
      : ctx_(std::move(ctx)), terms_(std::move(terms)), cap_(std::move(cap)) {
    normalize();
  }
  static GenSeries zero(const Ctx& ctx) { return GenSeries(ctx, {}, std::nullopt); }
  static GenSeries from_int(const Ctx& ctx, long n) {
    return GenSeries(ctx, {{Rational(0), Traits::from_int(ctx, n)}}, std::nullopt);
  }
  static GenSeries one(const Ctx& ctx) { return from_int(ctx, 1); }
  static GenSeries monomial(const Ctx& ctx, const Coeff& c, const Rational& g) {
    return GenSeries(ctx, {{g, c}}, std::nullopt);
  }

  const Ctx& ctx() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  const std::optional<Rational>& cap() const { return cap_; }
  bool vanishes() const { return terms_.empty(); }
  bool is_exact() const { return !cap_; }

  ValInfo val() const {
    if (terms_.empty()) return ValInfo::at_least(cap_);
    return ValInfo::exact(terms_.begin()->first);
  }
  const Coeff& leading_coeff() const {
    if (terms_.empty()) throw PrecisionError("leading coefficient of a vanishing element");
    return terms_.begin()->second;
  }
  std::optional<Coeff> coeff(const Rational& g) const {
    auto it = terms_.find(g);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
  }

  GenSeries truncated(const Rational& c) const {
    std::optional<Rational> nc = cap_ && *cap_ < c ? *cap_ : c;
    return GenSeries(ctx_, terms_, nc);
  }
  GenSeries with_cap(std::optional<Rational> c) const { return GenSeries(ctx_, terms_, c); }

  GenSeries operator-() const {
    Terms t;
    for (const auto& [g, c] : terms_) t.emplace(g, -c);
    return GenSeries(ctx_, std::move(t), cap_);
  }
  GenSeries operator+(const GenSeries& o) const {
    Terms t = terms_;
    for (const auto& [g, c] : o.terms_) {
      auto it = t.find(g);
      if (it == t.end()) {
        t.emplace(g, c);
      } else {
        it->second = it->second + c;
      }
    }
    return GenSeries(ctx_, std::move(t), min_cap(cap_, o.cap_));
  }
  GenSeries operator-(const GenSeries& o) const { return *this + (-o); }
  GenSeries operator*(const GenSeries& o) const {
    const auto vx = val().lower();
    const auto vy = o.val().lower();
    const auto cap = min_cap(add_cap(cap_, vy), add_cap(o.cap_, vx));
    Terms t;
    for (const auto& [g1, c1] : terms_) {
      for (const auto& [g2, c2] : o.terms_) {
        const Rational g = g1 + g2;
        if (cap && g >= *cap) continue;
        auto it = t.find(g);
        if (it == t.end()) {
          t.emplace(g, c1 * c2);
        } else {
          it->second = it->second + c1 * c2;
        }
      }
    }
    return GenSeries(ctx_, std::move(t), cap);
  }
  GenSeries pow(unsigned long e) const {
    GenSeries r = one(ctx_), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // Geometric-series inverse. Exact non-monomials use ctx.default_cap.
  GenSeries inverse() const {
    if (terms_.empty()) throw DivisionByZero("inverse of an element vanishing at precision");
    const auto& [g0, c0] = *terms_.begin();
    const GenSeries lead_inv = monomial(ctx_, Traits::invert_lead(c0), -g0);
    if (terms_.size() == 1 && Traits::is_monomial(c0)) return lead_inv.with_cap(inv_cap(cap_, g0));
    const Rational cx = cap_ ? *cap_ : std::max(ctx_.default_cap, Rational(g0 + 1));
    const Rational rel = cx - g0;
    const GenSeries y = (*this * lead_inv - one(ctx_)).truncated(rel);
    GenSeries s = one(ctx_), term = one(ctx_);
    for (;;) {
      term = (term * (-y)).truncated(rel);
      if (term.vanishes()) break;
      s = s + term;
    }
    return (s.truncated(rel) * lead_inv).truncated(Rational(cx - 2 * g0));
  }
  GenSeries operator/(const GenSeries& o) const { return *this * o.inverse(); }

  // Vanishes at precision after subtraction.
  bool equals_at_precision(const GenSeries& o) const { return (*this - o).vanishes(); }

  std::string to_string() const {
    std::string s;
    for (const auto& [g, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "[" + Traits::coeff_string(c) + "]";
      if (g != 0) s += std::string("*") + Traits::var + "^(" + vallab::to_string(g) + ")";
    }
    if (cap_) {
      if (!s.empty()) s += " + ";
      s += std::string("O(") + Traits::var + "^(" + vallab::to_string(*cap_) + "))";
    }
    return s.empty() ? "0" : s;
  }

 private:
  static std::optional<Rational> min_cap(const std::optional<Rational>& a,
                                         const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
  }
  static std::optional<Rational> add_cap(const std::optional<Rational>& c,
                                         const std::optional<Rational>& v) {
    if (!c || !v) return std::nullopt;
    return *c + *v;
  }
  static std::optional<Rational> inv_cap(const std::optional<Rational>& c, const Rational& g0) {
    if (!c) return std::nullopt;
    return Rational(*c - 2 * g0);
  }
  void normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (Traits::is_zero(it->second)) {
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
    Traits::carry(terms_, ctx_);
    if (cap_) terms_.erase(terms_.lower_bound(*cap_), terms_.end());
  }

  Ctx ctx_;
  Terms terms_;
  std::optional<Rational> cap_;
};

using Series = GenSeries<SeriesTraits>;
using PSeries = GenSeries<PSeriesTraits>;

// Coefficient at exponent 0; requires value exactly 0.
ResElem residue(const Series& x);
ResElem residue(const PSeries& x);
// Constant-term lift of a residue.
Series lift_residue(const SeriesTraits::Ctx& ctx, const ResElem& r);
PSeries lift_residue(const PSeriesTraits::Ctx& ctx, const ResElem& r);

// Exponents divided by p, coefficients replaced by p-th roots (promoting the
// perfect-hull level when needed), cap divided by p.
Series series_pth_root(const Series& x);

// Text format, e.g. "[1]*t^(-1) + [2*u] + O(t^(5))".
Series parse_series(const SeriesTraits::Ctx& ctx, std::string_view text);
PSeries parse_pseries(const PSeriesTraits::Ctx& ctx, std::string_view text);
ResElem parse_res_elem(const ResFieldDesc& f, std::string_view text);
LaurentQ parse_laurent(std::string_view text);

/// Truncated p-adic number p^m * unit, unit known modulo p^N (relative precision N).
class PadicNumber {
 public:
  PadicNumber(unsigned long p, long N);  // zero to absolute precision N
  static PadicNumber from_rational(const Rational& q, unsigned long p, long N);

  unsigned long prime() const { return p_; }
  bool is_zero() const { return unit_ == 0; }
  // Value m; zero has valuation equal to its absolute precision.
  long valuation() const { return m_; }
  long relative_precision() const { return n_; }
  long absolute_precision() const { return m_ + n_; }
  const Integer& unit() const { return unit_; }

  PadicNumber operator+(const PadicNumber& o) const;
  PadicNumber operator-(const PadicNumber& o) const;
  PadicNumber operator-() const;
  PadicNumber operator*(const PadicNumber& o) const;
  PadicNumber operator/(const PadicNumber& o) const;
  bool operator==(const PadicNumber& o) const;

  // "p^m*(d_0 + d_1*p + ...)" with base-p unit digits.
  std::string to_string() const;
  static PadicNumber parse(std::string_view text, unsigned long p);

 private:
  PadicNumber(unsigned long p, long m, Integer unit, long n);
  void normalize();
  unsigned long p_;
  long m_ = 0;
  Integer unit_ = 0;
  long n_ = 0;
};

}  // namespace vallab
