#include "vallab/vbase.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace vallab {

// ----------------------------------------------------------------- ValInfo

const Rational& ValInfo::get() const {
  if (!known) {
    throw PrecisionError("value indeterminate at precision" +
                         (bound ? " (>= " + vallab::to_string(*bound) + ")" : std::string()));
  }
  return value;
}

std::optional<Rational> ValInfo::lower() const {
  if (known) return value;
  return bound;
}

std::string ValInfo::to_string() const {
  if (known) return vallab::to_string(value);
  if (bound) return ">= " + vallab::to_string(*bound);
  return "inf";
}

// ---------------------------------------------------------------- LaurentQ

LaurentQ::LaurentQ(Map m) : m_(std::move(m)) {
  for (auto it = m_.begin(); it != m_.end();) {
    if (it->second == 0) {
      it = m_.erase(it);
    } else {
      it->second.canonicalize();
      ++it;
    }
  }
}

LaurentQ LaurentQ::constant(const Rational& c) { return LaurentQ(Map{{0, c}}); }
LaurentQ LaurentQ::monomial(const Rational& c, long e) { return LaurentQ(Map{{e, c}}); }

long LaurentQ::content(unsigned long p) const {
  if (m_.empty()) throw PreconditionError("content of the zero polynomial");
  long best = 0;
  bool first = true;
  for (const auto& [e, c] : m_) {
    const long v = padic_valuation(c, p);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

LaurentQ LaurentQ::operator+(const LaurentQ& o) const {
  Map r = m_;
  for (const auto& [e, c] : o.m_) r[e] += c;
  return LaurentQ(std::move(r));
}

LaurentQ LaurentQ::operator-() const {
  Map r;
  for (const auto& [e, c] : m_) r.emplace(e, -c);
  return LaurentQ(std::move(r));
}

LaurentQ LaurentQ::operator-(const LaurentQ& o) const { return *this + (-o); }

LaurentQ LaurentQ::operator*(const LaurentQ& o) const {
  Map r;
  for (const auto& [e1, c1] : m_) {
    for (const auto& [e2, c2] : o.m_) r[e1 + e2] += c1 * c2;
  }
  return LaurentQ(std::move(r));
}

LaurentQ LaurentQ::scale(const Rational& s) const {
  Map r;
  for (const auto& [e, c] : m_) r.emplace(e, c * s);
  return LaurentQ(std::move(r));
}

ResElem LaurentQ::reduce(std::uint32_t p, bool has_u) const {
  if (!has_u) {
    if (m_.size() > 1 || (m_.size() == 1 && m_.begin()->first != 0)) {
      throw PreconditionError("u appears in a ground without the transcendental u");
    }
    const ResFieldDesc f = ResFieldDesc::finite(p);
    if (m_.empty()) return ResElem::zero(f);
    return ResElem::from_int(f, reduce_mod_p(m_.begin()->second, p));
  }
  const ResFieldDesc f = ResFieldDesc::ratfun(p);
  ResElem r = ResElem::zero(f);
  for (const auto& [e, c] : m_) r = r + ResElem::u_power(f, reduce_mod_p(c, p), e, 1);
  return r;
}

std::string LaurentQ::to_string() const {
  if (m_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : m_) {
    if (!s.empty()) s += " + ";
    if (e == 0) {
      s += vallab::to_string(c);
      continue;
    }
    const std::string var = e == 1 ? "u" : "u^" + std::to_string(e);
    if (c == 1) {
      s += var;
    } else {
      s += vallab::to_string(c) + "*" + var;
    }
  }
  return s;
}

PSeriesTraits::Coeff PSeriesTraits::invert_lead(const Coeff& c) {
  if (!c.is_monomial()) {
    throw UnsupportedError("inverse of a non-monomial Laurent coefficient: " + c.to_string());
  }
  const auto& [e, q] = *c.terms().begin();
  return LaurentQ::monomial(1 / q, -e);
}

void PSeriesTraits::carry(std::map<Rational, Coeff>& terms, const Ctx& ctx) {
  for (;;) {
    bool moved = false;
    std::map<Rational, Coeff> out;
    for (auto& [g, q] : terms) {
      if (q.is_zero()) continue;
      const long k = q.content(ctx.p);
      Rational ng = g;
      Coeff nq = q;
      if (k != 0) {
        moved = true;
        Integer pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), ctx.p, static_cast<unsigned long>(k < 0 ? -k : k));
        nq = k > 0 ? q.scale(Rational(1) / Rational(pk)) : q.scale(Rational(pk));
        ng = g + k;
      }
      auto it = out.find(ng);
      if (it == out.end()) {
        out.emplace(ng, std::move(nq));
      } else {
        moved = true;
        it->second = it->second + nq;
        if (it->second.is_zero()) out.erase(it);
      }
    }
    terms = std::move(out);
    if (!moved) return;
  }
}

// ------------------------------------------------------------ residue maps

ResElem residue(const Series& x) {
  const ValInfo v = x.val();
  if (!v.known) throw PrecisionError("residue of an element with indeterminate value");
  if (v.value != 0) {
    throw PreconditionError("residue requires value 0, got " + vallab::to_string(v.value));
  }
  return x.leading_coeff();
}

ResElem residue(const PSeries& x) {
  const ValInfo v = x.val();
  if (!v.known) throw PrecisionError("residue of an element with indeterminate value");
  if (v.value != 0) {
    throw PreconditionError("residue requires value 0, got " + vallab::to_string(v.value));
  }
  return x.leading_coeff().reduce(x.ctx().p, x.ctx().has_u);
}

Series lift_residue(const SeriesTraits::Ctx& ctx, const ResElem& r) {
  if (r.is_zero()) return Series::zero(ctx);
  return Series::monomial(ctx, r, 0);
}

PSeries lift_residue(const PSeriesTraits::Ctx& ctx, const ResElem& r) {
  if (r.is_zero()) return PSeries::zero(ctx);
  const auto& f = r.field();
  if (f.kind() == ResKind::finite) {
    if (f.degree() != 1) throw UnsupportedError("lift from a non-prime finite residue field");
    return PSeries::from_int(ctx, r.num().coeff(0));
  }
  if (f.level() != 0) throw UnsupportedError("lift from a perfect-hull level into the ground");
  const FpPoly& den = r.den();
  if (den.degree() < 0 || std::count_if(den.coeffs().begin(), den.coeffs().end(),
                                        [](std::uint32_t c) { return c != 0; }) != 1) {
    throw UnsupportedError("lift of a residue that is not a Laurent polynomial in u");
  }
  const long shift = den.degree();
  const Rational dinv = Rational(inv_mod(den.lead(), ctx.p));
  LaurentQ::Map m;
  for (std::size_t i = 0; i < r.num().coeffs().size(); ++i) {
    if (r.num().coeff(i) == 0) continue;
    Rational c = Rational(r.num().coeff(i)) * dinv;
    Integer cm = c.get_num() % Integer(ctx.p);
    m.emplace(static_cast<long>(i) - shift, Rational(cm));
  }
  return PSeries(ctx, {{Rational(0), LaurentQ(std::move(m))}}, std::nullopt);
}

Series series_pth_root(const Series& x) {
  const auto& ctx = x.ctx();
  Series::Terms t;
  for (const auto& [g, c] : x.terms()) {
    auto r = pth_root(c);
    if (!r) {
      const unsigned next = c.field().level() + 1;
      if (!c.field().is_function_field() || next > ctx.max_level) {
        throw PrecisionError("coefficient has no p-th root up to the maximal perfect-hull level");
      }
      r = pth_root(promote(c, next));
    }
    t.emplace(g / Rational(ctx.p), *r);
  }
  std::optional<Rational> cap;
  if (x.cap()) cap = *x.cap() / Rational(ctx.p);
  return Series(ctx, std::move(t), cap);
}

// -------------------------------------------------------------------- text

namespace {

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits on " + " outside brackets and parentheses.
std::vector<std::string> split_sum(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth == 0 && s.substr(i, 3) == " + ") {
      out.push_back(strip(s.substr(start, i - start)));
      start = i + 3;
      i += 2;
    }
  }
  out.push_back(strip(s.substr(start)));
  return out;
}

std::string unwrap(std::string s) {
  s = strip(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0 && i + 1 < s.size()) return s;
    }
    return strip(s.substr(1, s.size() - 2));
  }
  return s;
}

Rational parse_exponent(std::string e) {
  return parse_rational(unwrap(std::move(e)));
}

// "c", "c*X", "X", "X^e", "c*X^e" with X the given variable.
std::pair<Rational, Rational> parse_monomial(const std::string& term, char var) {
  const auto vpos = term.find(var);
  if (vpos == std::string::npos) return {parse_rational(term), 0};
  Rational c = 1;
  if (vpos > 0) {
    std::string cs = term.substr(0, vpos);
    if (cs.back() != '*') throw PreconditionError("malformed term '" + term + "'");
    cs.pop_back();
    c = parse_rational(cs);
  }
  const std::string rest = term.substr(vpos + 1);
  if (rest.empty()) return {c, 1};
  if (rest[0] != '^') throw PreconditionError("malformed term '" + term + "'");
  return {c, parse_exponent(rest.substr(1))};
}

std::string find_top_level_slash(const std::string& s, std::string* rhs) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && s[i] == '/') {
      *rhs = s.substr(i + 1);
      return s.substr(0, i);
    }
  }
  rhs->clear();
  return s;
}

ResElem parse_res_poly(const ResFieldDesc& f, const std::string& text) {
  const std::string s = unwrap(text);
  ResElem r = ResElem::zero(f);
  const char var = f.kind() == ResKind::finite ? 'g' : 'u';
  for (const auto& term : split_sum(s)) {
    auto [c, e] = parse_monomial(term, var);
    if (!is_integer(c)) throw PreconditionError("residue coefficients must be integers");
    const long ci = c.get_num().get_si();
    if (f.kind() == ResKind::finite) {
      if (!is_integer(e) || e < 0) throw PreconditionError("bad exponent in '" + term + "'");
      r = r + ResElem::from_int(f, ci) * ResElem::gen(f).pow(e.get_num().get_si());
    } else {
      r = r + ResElem::u_power(f, ci, e.get_num().get_si(), e.get_den().get_ui());
    }
  }
  return r;
}

}  // namespace

ResElem parse_res_elem(const ResFieldDesc& f, std::string_view text) {
  std::string rhs;
  const std::string lhs = find_top_level_slash(strip(text), &rhs);
  const ResElem n = parse_res_poly(f, lhs);
  if (rhs.empty()) return n;
  return n / parse_res_poly(f, rhs);
}

LaurentQ parse_laurent(std::string_view text) {
  const std::string s = unwrap(strip(text));
  LaurentQ::Map m;
  for (const auto& term : split_sum(s)) {
    auto [c, e] = parse_monomial(term, 'u');
    if (!is_integer(e)) throw PreconditionError("Laurent exponents must be integers");
    m[e.get_num().get_si()] += c;
  }
  return LaurentQ(std::move(m));
}

namespace {

template <class S, class CoeffParser>
S parse_gen_series(const typename S::Ctx& ctx, std::string_view text, const char* var,
                   CoeffParser parse_coeff) {
  const std::string s = strip(text);
  typename S::Terms terms;
  std::optional<Rational> cap;
  if (s == "0") return S::zero(ctx);
  const std::string big_o = std::string("O(") + var + "^";
  for (const auto& term : split_sum(s)) {
    if (term.rfind(big_o, 0) == 0 && term.back() == ')') {
      cap = parse_exponent(term.substr(big_o.size(), term.size() - big_o.size() - 1));
      continue;
    }
    if (term.empty() || term[0] != '[') throw PreconditionError("malformed series term '" + term + "'");
    int depth = 0;
    std::size_t close = std::string::npos;
    for (std::size_t i = 0; i < term.size(); ++i) {
      if (term[i] == '[') ++depth;
      if (term[i] == ']' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close == std::string::npos) throw PreconditionError("unbalanced '[' in '" + term + "'");
    auto c = parse_coeff(term.substr(1, close - 1));
    Rational g = 0;
    const std::string rest = term.substr(close + 1);
    const std::string mono = std::string("*") + var + "^";
    if (!rest.empty()) {
      if (rest.rfind(mono, 0) != 0) throw PreconditionError("malformed series term '" + term + "'");
      g = parse_exponent(rest.substr(mono.size()));
    }
    auto it = terms.find(g);
    if (it == terms.end()) {
      terms.emplace(g, c);
    } else {
      it->second = it->second + c;
    }
  }
  return S(ctx, std::move(terms), cap);
}

}  // namespace

Series parse_series(const SeriesTraits::Ctx& ctx, std::string_view text) {
  // Coefficients are read at the finest level their exponents need.
  return parse_gen_series<Series>(ctx, text, "t", [&](const std::string& c) {
    if (!ctx.base_field.is_function_field()) return parse_res_elem(ctx.base_field, c);
    unsigned level = ctx.base_field.level();
    for (;;) {
      try {
        return parse_res_elem(ResFieldDesc::perflevel(ctx.p, level), c);
      } catch (const PreconditionError&) {
        if (++level > ctx.max_level) throw;
      }
    }
  });
}

PSeries parse_pseries(const PSeriesTraits::Ctx& ctx, std::string_view text) {
  return parse_gen_series<PSeries>(ctx, text, "p",
                                   [](const std::string& c) { return parse_laurent(c); });
}

// ------------------------------------------------------------- PadicNumber

namespace {

Integer ipow(unsigned long p, long n) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(std::max(0L, n)));
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

PadicNumber::PadicNumber(unsigned long p, long N) : p_(p), m_(N), unit_(0), n_(0) {
  if (!is_prime(p)) throw PreconditionError("p-adic prime must be prime");
}

PadicNumber::PadicNumber(unsigned long p, long m, Integer unit, long n)
    : p_(p), m_(m), unit_(std::move(unit)), n_(n) {
  normalize();
}

void PadicNumber::normalize() {
  if (n_ <= 0) {
    unit_ = 0;
    n_ = 0;
    return;
  }
  unit_ = mod(unit_, ipow(p_, n_));
  if (unit_ == 0) {
    m_ += n_;
    n_ = 0;
    return;
  }
  while (mpz_divisible_ui_p(unit_.get_mpz_t(), p_)) {
    mpz_divexact_ui(unit_.get_mpz_t(), unit_.get_mpz_t(), p_);
    ++m_;
    --n_;
  }
  if (n_ <= 0) {
    unit_ = 0;
    n_ = 0;
  }
}

PadicNumber PadicNumber::from_rational(const Rational& q, unsigned long p, long N) {
  if (N <= 0) throw PreconditionError("p-adic precision must be positive");
  if (q == 0) return PadicNumber(p, N);
  const long m = padic_valuation(q, p);
  Rational u = q * (m >= 0 ? Rational(1) / Rational(ipow(p, m)) : Rational(ipow(p, -m)));
  u.canonicalize();
  const Integer pn = ipow(p, N);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), u.get_den_mpz_t(), pn.get_mpz_t());
  return PadicNumber(p, m, mod(u.get_num() * inv, pn), N);
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
  if (p_ != o.p_) throw PreconditionError("p-adic prime mismatch");
  const long abs = std::min(absolute_precision(), o.absolute_precision());
  const long m = std::min(m_, o.m_);
  if (abs <= m) return PadicNumber(p_, abs);
  const Integer s = unit_ * ipow(p_, m_ - m) + o.unit_ * ipow(p_, o.m_ - m);
  const PadicNumber r(p_, m, s, abs - m);
  return r.is_zero() ? PadicNumber(p_, abs) : r;
}

PadicNumber PadicNumber::operator-() const { return PadicNumber(p_, m_, -unit_, n_); }

PadicNumber PadicNumber::operator-(const PadicNumber& o) const { return *this + (-o); }

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
  if (p_ != o.p_) throw PreconditionError("p-adic prime mismatch");
  if (is_zero() || o.is_zero()) return PadicNumber(p_, m_ + o.m_);
  return PadicNumber(p_, m_ + o.m_, unit_ * o.unit_, std::min(n_, o.n_));
}

PadicNumber PadicNumber::operator/(const PadicNumber& o) const {
  if (o.is_zero()) throw DivisionByZero("p-adic division by zero at precision");
  if (is_zero()) return PadicNumber(p_, m_ - o.m_);
  const long n = std::min(n_, o.n_);
  Integer inv;
  const Integer pn = ipow(p_, n);
  mpz_invert(inv.get_mpz_t(), o.unit_.get_mpz_t(), pn.get_mpz_t());
  return PadicNumber(p_, m_ - o.m_, unit_ * inv, n);
}

bool PadicNumber::operator==(const PadicNumber& o) const { return (*this - o).is_zero(); }

std::string PadicNumber::to_string() const {
  const std::string ps = std::to_string(p_);
  if (is_zero()) return "O(" + ps + "^" + std::to_string(m_) + ")";
  std::string digits;
  Integer u = unit_;
  for (long i = 0; i < n_ && u != 0; ++i) {
    const unsigned long d = mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), p_);
    if (d == 0) continue;
    if (!digits.empty()) digits += " + ";
    digits += std::to_string(d);
    if (i == 1) digits += "*" + ps;
    if (i > 1) digits += "*" + ps + "^" + std::to_string(i);
  }
  digits += " + O(" + ps + "^" + std::to_string(n_) + ")";
  return ps + "^" + std::to_string(m_) + "*(" + digits + ")";
}

PadicNumber PadicNumber::parse(std::string_view text, unsigned long p) {
  const std::string s = strip(text);
  const std::string ps = std::to_string(p);
  auto parse_long = [&](const std::string& x) {
    try {
      std::size_t used = 0;
      const long v = std::stol(x, &used);
      if (used != x.size()) throw PreconditionError("");
      return v;
    } catch (const std::exception&) {
      throw PreconditionError("malformed p-adic literal '" + s + "'");
    }
  };
  const std::string big_o = "O(" + ps + "^";
  if (s.rfind(big_o, 0) == 0 && s.back() == ')') {
    return PadicNumber(p, parse_long(s.substr(big_o.size(), s.size() - big_o.size() - 1)));
  }
  const std::string head = ps + "^";
  const auto star = s.find("*(");
  if (s.rfind(head, 0) != 0 || star == std::string::npos || s.back() != ')') {
    throw PreconditionError("malformed p-adic literal '" + s + "'");
  }
  const long m = parse_long(s.substr(head.size(), star - head.size()));
  Integer unit = 0;
  long n = -1;
  for (const auto& term : split_sum(s.substr(star + 2, s.size() - star - 3))) {
    if (term.rfind(big_o, 0) == 0) {
      n = parse_long(term.substr(big_o.size(), term.size() - big_o.size() - 1));
      continue;
    }
    long d = 0, i = 0;
    const auto st = term.find('*');
    if (st == std::string::npos) {
      d = parse_long(term);
    } else {
      d = parse_long(term.substr(0, st));
      const std::string pw = term.substr(st + 1);
      if (pw == ps) {
        i = 1;
      } else if (pw.rfind(head, 0) == 0) {
        i = parse_long(pw.substr(head.size()));
      } else {
        throw PreconditionError("malformed p-adic digit '" + term + "'");
      }
    }
    unit += Integer(d) * ipow(p, i);
  }
  if (n < 0) throw PreconditionError("p-adic literal lacks an O(p^N) term");
  return PadicNumber(p, m, unit, n);
}

}  // namespace vallab
