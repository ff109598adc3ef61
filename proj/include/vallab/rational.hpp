#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace vallab {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Parses "a", "-a", "a/b"; canonicalizes. Throws PreconditionError, or
// DivisionByZero for a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

bool is_integer(const Rational& q);
Integer floor(const Rational& q);

// p-adic valuation of a nonzero integer / rational.
long padic_valuation(const Integer& z, unsigned long p);
long padic_valuation(const Rational& q, unsigned long p);

// Reduction of a p-integral rational modulo p.
std::uint32_t reduce_mod_p(const Rational& q, std::uint32_t p);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

bool is_prime(unsigned long n);

}  // namespace vallab
