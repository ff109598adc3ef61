#include "vallab/resfield.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "vallab/errors.hpp"
#include "vallab/rational.hpp"

namespace vallab {

// ------------------------------------------------------------------ FpPoly

namespace {

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t reduce_int(std::int64_t c, std::uint32_t p) {
  std::int64_t r = c % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw DivisionByZero("inverse of zero in F_p");
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    const std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return reduce_int(t, p);
}

FpPoly::FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& x : c_) x %= p_;
  trim();
}

FpPoly FpPoly::constant(std::uint32_t p, std::int64_t c) { return FpPoly(p, {reduce_int(c, p)}); }

FpPoly FpPoly::monomial(std::uint32_t p, std::uint32_t c, std::size_t deg) {
  std::vector<std::uint32_t> v(deg + 1, 0);
  v[deg] = c % p;
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (coeff(i) + o.coeff(i)) % p_;
  return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::operator-() const {
  std::vector<std::uint32_t> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (p_ - c_[i]) % p_;
  return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::operator-(const FpPoly& o) const { return *this + (-o); }

FpPoly FpPoly::operator*(const FpPoly& o) const {
  if (is_zero() || o.is_zero()) return FpPoly(p_, {});
  std::vector<std::uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(c_[i]) * o.c_[j]) % p_;
    }
  }
  std::vector<std::uint32_t> r(acc.begin(), acc.end());
  return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::scale(std::uint32_t s) const {
  std::vector<std::uint32_t> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mulmod(c_[i], s % p_, p_);
  return FpPoly(p_, std::move(r));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const {
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<std::uint32_t> r = c_;
  const std::size_t dd = d.c_.size() - 1;
  if (r.size() <= dd) return {FpPoly(p_, {}), *this};
  std::vector<std::uint32_t> q(r.size() - dd, 0);
  const std::uint32_t li = inv_mod(d.lead(), p_);
  for (std::size_t i = r.size(); i-- > dd;) {
    const std::uint32_t f = mulmod(r[i], li, p_);
    if (f == 0) continue;
    q[i - dd] = f;
    for (std::size_t j = 0; j <= dd; ++j) {
      r[i - dd + j] = (r[i - dd + j] + p_ - mulmod(f, d.c_[j], p_)) % p_;
    }
  }
  return {FpPoly(p_, std::move(q)), FpPoly(p_, std::move(r))};
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scale(inv_mod(lead(), p_));
}

FpPoly FpPoly::inflate(std::size_t e) const {
  if (is_zero()) return *this;
  std::vector<std::uint32_t> r((c_.size() - 1) * e + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i * e] = c_[i];
  return FpPoly(p_, std::move(r));
}

std::optional<FpPoly> FpPoly::deflate(std::size_t e) const {
  std::vector<std::uint32_t> r;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (i % e != 0) return std::nullopt;
    if (r.size() <= i / e) r.resize(i / e + 1, 0);
    r[i / e] = c_[i];
  }
  return FpPoly(p_, std::move(r));
}

FpPoly poly_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

// Inverse of a modulo m (coprime).
FpPoly poly_inverse_mod(const FpPoly& a, const FpPoly& m) {
  const std::uint32_t p = m.prime();
  FpPoly r0 = m, r1 = a.divmod(m).second;
  FpPoly t0(p, {}), t1 = FpPoly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    FpPoly t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.degree() != 0) throw DivisionByZero("element is not invertible");
  return t0.scale(inv_mod(r0.lead(), p)).divmod(m).second;
}

bool is_irreducible(const FpPoly& f) {
  const std::uint32_t p = f.prime();
  const long d = f.degree();
  if (d <= 0) return false;
  // Trial division by every monic polynomial of degree <= d/2.
  for (long k = 1; 2 * k <= d; ++k) {
    std::vector<std::uint32_t> cs(k + 1, 0);
    cs[k] = 1;
    for (;;) {
      if (f.divmod(FpPoly(p, cs)).second.is_zero()) return false;
      long i = 0;
      while (i < k && ++cs[i] == p) cs[i++] = 0;
      if (i == k) break;
    }
  }
  return true;
}

FpPoly find_irreducible(std::uint32_t p, unsigned d) {
  std::vector<std::uint32_t> cs(d + 1, 0);
  cs[d] = 1;
  for (;;) {
    FpPoly f(p, cs);
    if (is_irreducible(f)) return f;
    unsigned i = 0;
    while (i < d && ++cs[i] == p) cs[i++] = 0;
    if (i == d) break;
  }
  throw Error("internal: no irreducible polynomial found");
}

}  // namespace

// ------------------------------------------------------------ ResFieldDesc

ResFieldDesc ResFieldDesc::finite(std::uint32_t p, unsigned degree) {
  if (!is_prime(p)) throw PreconditionError("residue characteristic must be prime");
  if (p >= 65536) throw PreconditionError("residue characteristic too large");
  if (degree == 0) throw PreconditionError("finite field degree must be positive");
  double q = 1;
  for (unsigned i = 0; i < degree; ++i) q *= p;
  if (q > 1e6) throw PreconditionError("finite field too large");
  ResFieldDesc f;
  f.p_ = p;
  f.kind_ = ResKind::finite;
  f.degree_ = degree;
  f.modulus_ = degree == 1 ? FpPoly(p, {0, 1}) : find_irreducible(p, degree);
  return f;
}

ResFieldDesc ResFieldDesc::ratfun(std::uint32_t p) { return perflevel(p, 0); }

ResFieldDesc ResFieldDesc::perflevel(std::uint32_t p, unsigned level) {
  if (!is_prime(p)) throw PreconditionError("residue characteristic must be prime");
  if (p >= 65536) throw PreconditionError("residue characteristic too large");
  ResFieldDesc f;
  f.p_ = p;
  f.kind_ = level == 0 ? ResKind::ratfun : ResKind::perflevel;
  f.level_ = level;
  f.modulus_ = FpPoly(p, {});
  return f;
}

bool ResFieldDesc::operator==(const ResFieldDesc& o) const {
  return p_ == o.p_ && kind_ == o.kind_ && degree_ == o.degree_ && level_ == o.level_;
}

std::string ResFieldDesc::to_string() const {
  const std::string ps = std::to_string(p_);
  switch (kind_) {
    case ResKind::finite:
      return degree_ == 1 ? "F_" + ps : "F_" + ps + "^" + std::to_string(degree_);
    case ResKind::ratfun:
      return "F_" + ps + "(u)";
    case ResKind::perflevel:
      return "F_" + ps + "(u^(1/" + ps + "^" + std::to_string(level_) + "))";
  }
  return "?";
}

bool is_perfect(const ResFieldDesc& f) { return f.kind() == ResKind::finite; }

// ------------------------------------------------------------------ ResElem

ResElem::ResElem(ResFieldDesc field, FpPoly num, FpPoly den)
    : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void ResElem::normalize() {
  const std::uint32_t p = field_.characteristic();
  if (num_.prime() != p || den_.prime() != p) {
    if (!num_.is_zero() && num_.prime() != p) throw PreconditionError("characteristic mismatch");
    num_ = FpPoly(p, num_.coeffs());
    den_ = den_.is_zero() && den_.prime() != p ? FpPoly::constant(p, 1) : FpPoly(p, den_.coeffs());
  }
  if (den_.is_zero()) throw DivisionByZero("residue fraction with zero denominator");
  if (field_.kind() == ResKind::finite) {
    FpPoly d = den_.divmod(field_.modulus()).second;
    if (d.is_zero()) throw DivisionByZero("division by zero in finite field");
    num_ = (num_ * poly_inverse_mod(d, field_.modulus())).divmod(field_.modulus()).second;
    den_ = FpPoly::constant(p, 1);
    return;
  }
  if (num_.is_zero()) {
    den_ = FpPoly::constant(p, 1);
    return;
  }
  const FpPoly g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divmod(g).first;
    den_ = den_.divmod(g).first;
  }
  const std::uint32_t li = inv_mod(den_.lead(), p);
  num_ = num_.scale(li);
  den_ = den_.scale(li);
}

ResElem ResElem::from_int(const ResFieldDesc& f, std::int64_t c) {
  return ResElem(f, FpPoly::constant(f.characteristic(), c), FpPoly::constant(f.characteristic(), 1));
}

ResElem ResElem::gen(const ResFieldDesc& f) {
  const std::uint32_t p = f.characteristic();
  return ResElem(f, FpPoly::monomial(p, 1, 1), FpPoly::constant(p, 1));
}

ResElem ResElem::u_power(const ResFieldDesc& f, std::int64_t c, long num, unsigned long den) {
  if (!f.is_function_field()) throw PreconditionError("u is not defined in a finite residue field");
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), f.characteristic(), f.level());
  Rational e(num, den);
  e.canonicalize();
  Rational m = e * Rational(scale);
  m.canonicalize();
  if (m.get_den() != 1) {
    throw PreconditionError("u^" + vallab::to_string(e) + " does not lie in " + f.to_string());
  }
  const long k = m.get_num().get_si();
  const std::uint32_t p = f.characteristic();
  const std::uint32_t cc = reduce_int(c, p);
  if (k >= 0) return ResElem(f, FpPoly::monomial(p, cc, k), FpPoly::constant(p, 1));
  return ResElem(f, FpPoly::constant(p, cc), FpPoly::monomial(p, 1, -k));
}

bool ResElem::is_one() const { return num_.degree() == 0 && num_.lead() == 1 && den_.degree() == 0; }

ResFieldDesc common_field(const ResFieldDesc& a, const ResFieldDesc& b) {
  if (a.characteristic() != b.characteristic()) {
    throw PreconditionError("residue characteristic mismatch");
  }
  if (a.is_function_field() != b.is_function_field() || (!a.is_function_field() && !(a == b))) {
    throw PreconditionError("residue field mismatch: " + a.to_string() + " vs " + b.to_string());
  }
  return a.level() >= b.level() ? a : b;
}

ResElem promote(const ResElem& x, unsigned level) {
  const auto& f = x.field();
  if (!f.is_function_field()) return x;
  if (level < f.level()) throw PreconditionError("cannot demote residue element");
  if (level == f.level()) return x;
  std::size_t e = 1;
  for (unsigned i = f.level(); i < level; ++i) e *= f.characteristic();
  return ResElem(ResFieldDesc::perflevel(f.characteristic(), level), x.num().inflate(e),
                 x.den().inflate(e));
}

namespace {

std::pair<ResElem, ResElem> coerce(const ResElem& a, const ResElem& b) {
  const ResFieldDesc f = common_field(a.field(), b.field());
  return {promote(a, f.level()), promote(b, f.level())};
}

}  // namespace

ResElem ResElem::operator+(const ResElem& o) const {
  auto [a, b] = coerce(*this, o);
  return ResElem(a.field_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ResElem ResElem::operator-() const { return ResElem(field_, -num_, den_); }

ResElem ResElem::operator-(const ResElem& o) const { return *this + (-o); }

ResElem ResElem::operator*(const ResElem& o) const {
  auto [a, b] = coerce(*this, o);
  return ResElem(a.field_, a.num_ * b.num_, a.den_ * b.den_);
}

ResElem ResElem::inverse() const {
  if (is_zero()) throw DivisionByZero("residue division by zero");
  if (field_.kind() == ResKind::finite) {
    return ResElem(field_, FpPoly::constant(field_.characteristic(), 1), num_);
  }
  return ResElem(field_, den_, num_);
}

ResElem ResElem::operator/(const ResElem& o) const { return *this * o.inverse(); }

ResElem ResElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  ResElem base = *this, r = one(field_);
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool ResElem::operator==(const ResElem& o) const {
  if (field_.characteristic() != o.field_.characteristic()) return false;
  auto [a, b] = coerce(*this, o);
  return a.num_ == b.num_ && a.den_ == b.den_;
}

namespace {

std::string term_string(std::uint32_t c, std::size_t e, const ResFieldDesc& f) {
  std::string var;
  if (f.kind() == ResKind::finite) {
    if (e > 0) var = e == 1 ? "g" : "g^" + std::to_string(e);
  } else if (e > 0) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), f.characteristic(), f.level());
    Rational ex(Integer(static_cast<unsigned long>(e)), scale);
    ex.canonicalize();
    if (ex == 1) {
      var = "u";
    } else if (ex.get_den() == 1) {
      var = "u^" + vallab::to_string(ex);
    } else {
      var = "u^(" + vallab::to_string(ex) + ")";
    }
  }
  if (var.empty()) return std::to_string(c);
  if (c == 1) return var;
  return std::to_string(c) + "*" + var;
}

std::string poly_string(const FpPoly& a, const ResFieldDesc& f) {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeff(i) == 0) continue;
    if (!s.empty()) s += " + ";
    s += term_string(a.coeff(i), i, f);
  }
  return s;
}

}  // namespace

std::string ResElem::to_string() const {
  const std::string n = poly_string(num_, field_);
  if (den_.degree() == 0) return n;
  auto wrap = [](const std::string& s, const FpPoly& q) {
    const auto terms = std::count_if(q.coeffs().begin(), q.coeffs().end(),
                                     [](std::uint32_t c) { return c != 0; });
    return terms > 1 ? "(" + s + ")" : s;
  };
  return wrap(n, num_) + "/" + wrap(poly_string(den_, field_), den_);
}

ResElem arith(const ResElem& x, const ResElem& y, ResOp op) {
  switch (op) {
    case ResOp::add:
      return x + y;
    case ResOp::mul:
      return x * y;
    case ResOp::div:
      return x / y;
  }
  throw Error("unknown residue operation");
}

ResElem frobenius(const ResElem& x) {
  const auto& f = x.field();
  if (f.kind() == ResKind::finite) return x.pow(f.characteristic());
  return ResElem(f, x.num().inflate(f.characteristic()), x.den().inflate(f.characteristic()));
}

std::optional<ResElem> pth_root(const ResElem& x) {
  const auto& f = x.field();
  if (f.kind() == ResKind::finite) {
    // q/p-th power inverts Frobenius on F_q.
    ResElem r = x;
    for (unsigned i = 1; i < f.degree(); ++i) r = r.pow(f.characteristic());
    return r;
  }
  auto n = x.num().deflate(f.characteristic());
  auto d = x.den().deflate(f.characteristic());
  if (!n || !d) return std::nullopt;
  return ResElem(f, *n, *d);
}

std::pair<ResFieldDesc, ResElem> adjoin_pth_root(const ResFieldDesc& f, const ResElem& x) {
  if (!f.is_function_field()) throw PreconditionError("perfect field: p-th root already present");
  const ResElem y = promote(x, std::max(f.level(), x.field().level()));
  if (!(y.field() == f)) throw PreconditionError("element does not belong to " + f.to_string());
  if (pth_root(y)) throw PreconditionError("degenerate adjunction: element is already a p-th power");
  const ResFieldDesc next = ResFieldDesc::perflevel(f.characteristic(), f.level() + 1);
  // Over F_p, a(w)^p = a(w^p); read the same polynomials in the finer variable.
  return {next, ResElem(next, y.num(), y.den())};
}

std::vector<ResElem> decompose(const ResElem& y) {
  const auto& f = y.field();
  if (!f.is_function_field() || f.level() == 0) {
    throw PreconditionError("decompose requires a perfect-hull level >= 1");
  }
  const std::uint32_t p = f.characteristic();
  const ResFieldDesc below = ResFieldDesc::perflevel(p, f.level() - 1);
  FpPoly bp1 = FpPoly::constant(p, 1);
  for (std::uint32_t i = 1; i < p; ++i) bp1 = bp1 * y.den();
  const FpPoly n = y.num() * bp1;
  std::vector<ResElem> out;
  for (std::uint32_t i = 0; i < p; ++i) {
    std::vector<std::uint32_t> cs;
    for (std::size_t k = i; k < n.coeffs().size(); k += p) {
      const std::size_t j = (k - i) / p;
      if (cs.size() <= j) cs.resize(j + 1, 0);
      cs[j] = n.coeff(k);
    }
    out.emplace_back(below, FpPoly(p, std::move(cs)), y.den());
  }
  return out;
}

nlohmann::json to_json(const ResFieldDesc& f) {
  nlohmann::json j;
  j["char"] = f.characteristic();
  switch (f.kind()) {
    case ResKind::finite: {
      j["kind"] = "finite";
      unsigned long q = 1;
      for (unsigned i = 0; i < f.degree(); ++i) q *= f.characteristic();
      j["q"] = q;
      break;
    }
    case ResKind::ratfun:
      j["kind"] = "ratfun";
      break;
    case ResKind::perflevel:
      j["kind"] = "perflevel";
      j["level"] = f.level();
      break;
  }
  return j;
}

ResFieldDesc resfield_from_json(const nlohmann::json& j) {
  try {
    const auto p = j.at("char").get<std::uint32_t>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "finite") {
      unsigned long q = j.value("q", static_cast<unsigned long>(p));
      unsigned d = 0;
      while (q > 1 && q % p == 0) {
        q /= p;
        ++d;
      }
      if (q != 1 || d == 0) throw PreconditionError("finite field size must be a power of char");
      return ResFieldDesc::finite(p, d);
    }
    if (kind == "ratfun") return ResFieldDesc::ratfun(p);
    if (kind == "perflevel") return ResFieldDesc::perflevel(p, j.at("level").get<unsigned>());
    throw PreconditionError("unknown residue field kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed residue field JSON: ") + e.what());
  }
}

}  // namespace vallab
