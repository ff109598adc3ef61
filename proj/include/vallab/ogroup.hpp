#pragma once

// Finitely generated ordered abelian groups embedded in Q^r with the
// lexicographic order, optionally closed under division by a designated prime.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vallab/rational.hpp"

namespace vallab {

/// Rational vector ordered lexicographically, most significant coordinate first.
class LexValue {
 public:
  LexValue() = default;
  explicit LexValue(std::vector<Rational> coords);
  explicit LexValue(const Rational& scalar);  // rank 1

  static LexValue zero(std::size_t rank);

  std::size_t rank() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_.at(i); }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  // First nonzero coordinate, or rank() for zero.
  std::size_t leading_position() const;
  bool is_positive() const;

  LexValue operator+(const LexValue& o) const;
  LexValue operator-(const LexValue& o) const;
  LexValue operator-() const;
  LexValue operator*(const Rational& s) const;
  LexValue operator/(const Rational& s) const;

  bool operator==(const LexValue& o) const;
  std::strong_ordering operator<=>(const LexValue& o) const;

  std::string to_string() const;

 private:
  std::vector<Rational> coords_;
};

/// { sum a_i g_i + sum b_j h_j / p^k } with g_i the open generators and h_j
/// the p-closed ones.
class OGroup {
 public:
  OGroup(std::size_t rank, std::vector<LexValue> gens, std::vector<std::size_t> p_closed,
         unsigned long prime);

  static OGroup trivial(std::size_t rank, unsigned long prime = 1);
  // Z-span of rank-1 values.
  static OGroup cyclic(const Rational& gen, unsigned long prime = 1, bool closed = false);

  std::size_t rank() const { return rank_; }
  unsigned long prime() const { return prime_; }
  const std::vector<LexValue>& gens() const { return gens_; }
  const std::vector<std::size_t>& p_closed() const { return p_closed_; }
  bool is_closed(std::size_t i) const;

  std::vector<LexValue> open_gens() const;
  std::vector<LexValue> closed_gens() const;

  OGroup with_generator(const LexValue& g, bool closed = false) const;

  std::string to_string() const;

 private:
  std::size_t rank_;
  std::vector<LexValue> gens_;
  std::vector<std::size_t> p_closed_;
  unsigned long prime_;
};

struct ConvexPart {
  OGroup group;
  std::size_t cut_index;  // leading coordinates vanishing on the subgroup
};

/// Group index; nullopt means infinite.
using GroupIndex = std::optional<Integer>;

bool contains(const OGroup& g, const LexValue& x);
bool contains(const OGroup& g, const Rational& x);  // rank 1 convenience

bool is_subgroup(const OGroup& h, const OGroup& g);
bool same_group(const OGroup& a, const OGroup& b);

// [G : H]; requires H a subgroup of G.
GroupIndex index(const OGroup& g, const OGroup& h);

bool is_p_divisible(const OGroup& g, unsigned long p);

// Smallest convex subgroup containing x > 0.
ConvexPart convex_core(const OGroup& g, const LexValue& x, unsigned long p);

// p-divisibility of (vK)_vp; without vp (equal characteristic) the whole group.
bool is_roughly_p_divisible(const OGroup& g, const std::optional<LexValue>& vp, unsigned long p);

enum class HullKind { p_div, p_prime_div };

// level == nullopt requests the exact p-divisible hull (p_div only).
OGroup hull(const OGroup& g, HullKind kind, std::optional<unsigned> level, unsigned long p);

OGroup lex_compose(const OGroup& outer, const OGroup& inner);
OGroup quotient_by_convex(const OGroup& g, const ConvexPart& h);

// G intersected with the subspace where coordinates [0, cut) vanish.
OGroup intersect_tail(const OGroup& g, std::size_t cut);

// Smallest positive k with k*x in G, or nullopt if none up to `limit`.
std::optional<unsigned long> order_modulo(const OGroup& g, const LexValue& x, unsigned long limit);

// True iff some g in G satisfies 0 < g < x.
bool has_element_below(const OGroup& g, const LexValue& x);

// Dimension of the Q-span of the generators.
std::size_t q_rank(const OGroup& g);

// Canonical generators: HNF of the open part and of the closed part.
OGroup simplify(const OGroup& g);

nlohmann::json to_json(const LexValue& v);
LexValue lex_value_from_json(const nlohmann::json& j, std::size_t rank);
nlohmann::json to_json(const OGroup& g);
OGroup ogroup_from_json(const nlohmann::json& j);

}  // namespace vallab
