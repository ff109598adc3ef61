#pragma once

// Residue fields: F_q, F_p(u) and the perfect-hull levels F_p(u^{1/p^k}).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace vallab {

/// Dense polynomial over F_p, coefficients low degree first, no trailing zeros.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs);
  static FpPoly constant(std::uint32_t p, std::int64_t c);
  static FpPoly monomial(std::uint32_t p, std::uint32_t c, std::size_t deg);

  std::uint32_t prime() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for zero.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator-() const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly scale(std::uint32_t s) const;
  bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

  // Euclidean division; divisor must be nonzero.
  std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;
  FpPoly monic() const;
  // w -> w^e
  FpPoly inflate(std::size_t e) const;
  // Inverse of inflate; nullopt if some exponent is not a multiple of e.
  std::optional<FpPoly> deflate(std::size_t e) const;

 private:
  void trim();
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> c_;
};

FpPoly poly_gcd(FpPoly a, FpPoly b);
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

enum class ResKind { finite, ratfun, perflevel };

/// F_q (finite), F_p(u) (ratfun, level 0) or F_p(u^{1/p^k}) (perflevel k >= 1).
class ResFieldDesc {
 public:
  static ResFieldDesc finite(std::uint32_t p, unsigned degree = 1);
  static ResFieldDesc ratfun(std::uint32_t p);
  static ResFieldDesc perflevel(std::uint32_t p, unsigned level);

  std::uint32_t characteristic() const { return p_; }
  ResKind kind() const { return kind_; }
  // Extension degree over F_p for finite fields.
  unsigned degree() const { return degree_; }
  // 0 for ratfun.
  unsigned level() const { return level_; }
  const FpPoly& modulus() const { return modulus_; }
  bool is_function_field() const { return kind_ != ResKind::finite; }

  bool operator==(const ResFieldDesc& o) const;
  std::string to_string() const;

 private:
  std::uint32_t p_ = 2;
  ResKind kind_ = ResKind::finite;
  unsigned degree_ = 1;
  unsigned level_ = 0;
  FpPoly modulus_;
};

bool is_perfect(const ResFieldDesc& f);

/// Element of a residue field. Function field elements are reduced fractions
/// in w = u^{1/p^level} with monic denominator; finite field elements are
/// residues modulo the defining polynomial.
class ResElem {
 public:
  ResElem() = default;
  ResElem(ResFieldDesc field, FpPoly num, FpPoly den);
  static ResElem from_int(const ResFieldDesc& f, std::int64_t c);
  static ResElem zero(const ResFieldDesc& f) { return from_int(f, 0); }
  static ResElem one(const ResFieldDesc& f) { return from_int(f, 1); }
  // Generator: u^{1/p^level} for function fields, the class of X for F_q.
  static ResElem gen(const ResFieldDesc& f);
  // c * u^{e} for e with denominator dividing p^level.
  static ResElem u_power(const ResFieldDesc& f, std::int64_t c, long num, unsigned long den);

  const ResFieldDesc& field() const { return field_; }
  const FpPoly& num() const { return num_; }
  const FpPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;

  ResElem operator+(const ResElem& o) const;
  ResElem operator-(const ResElem& o) const;
  ResElem operator-() const;
  ResElem operator*(const ResElem& o) const;
  ResElem operator/(const ResElem& o) const;
  ResElem inverse() const;
  ResElem pow(long e) const;
  bool operator==(const ResElem& o) const;

  std::string to_string() const;

 private:
  void normalize();
  ResFieldDesc field_ = ResFieldDesc::finite(2);
  FpPoly num_, den_;
};

enum class ResOp { add, mul, div };
ResElem arith(const ResElem& x, const ResElem& y, ResOp op);

// Function field of the larger level among the two; throws on characteristic
// or kind mismatch.
ResFieldDesc common_field(const ResFieldDesc& a, const ResFieldDesc& b);
// Embeds x into the function field of level `level` >= its own.
ResElem promote(const ResElem& x, unsigned level);

ResElem frobenius(const ResElem& x);
// Root in the same field, or nullopt (NoRoot).
std::optional<ResElem> pth_root(const ResElem& x);
// Next level and the image of x^{1/p}; throws if x is already a p-th power.
std::pair<ResFieldDesc, ResElem> adjoin_pth_root(const ResFieldDesc& f, const ResElem& x);

// For y at level k >= 1, components y_i at level k-1 with y = sum_i y_i w^i,
// w = u^{1/p^k}, 0 <= i < p.
std::vector<ResElem> decompose(const ResElem& y);

nlohmann::json to_json(const ResFieldDesc& f);
ResFieldDesc resfield_from_json(const nlohmann::json& j);

}  // namespace vallab
