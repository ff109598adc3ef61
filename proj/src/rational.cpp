#include "vallab/rational.hpp"

#include <cctype>

#include "vallab/errors.hpp"

namespace vallab {

Rational make_rational(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw PreconditionError("empty rational literal");
  auto valid = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    }
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid(num) || !valid(den)) {
    throw PreconditionError("malformed rational literal '" + std::string(text) + "'");
  }
  Integer n(num), d(den);
  if (d == 0) throw DivisionByZero("rational with zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

long padic_valuation(const Integer& z, unsigned long p) {
  if (z == 0) throw PreconditionError("p-adic valuation of zero");
  Integer t = abs(z);
  long v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

long padic_valuation(const Rational& q, unsigned long p) {
  return padic_valuation(q.get_num(), p) - padic_valuation(q.get_den(), p);
}

std::uint32_t reduce_mod_p(const Rational& q, std::uint32_t p) {
  if (q == 0) return 0;
  if (mpz_divisible_ui_p(q.get_den_mpz_t(), p)) {
    throw PreconditionError("rational is not p-integral");
  }
  Integer pm(p), num, den, inv;
  mpz_mod(num.get_mpz_t(), q.get_num_mpz_t(), pm.get_mpz_t());
  mpz_mod(den.get_mpz_t(), q.get_den_mpz_t(), pm.get_mpz_t());
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t());
  Integer r = (num * inv) % pm;
  return static_cast<std::uint32_t>(r.get_ui());
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace vallab
