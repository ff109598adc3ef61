#pragma once

// Valued field towers over a Series or PSeries ground.
//
// A tower is a ground with a list of embedded steps (generators that are
// already ground elements, such as t^{-1/p^i}) followed by symbolic steps
// (quotient rings by monic minimal polynomials). Elements of a symbolic level
// of degree n are coefficient vectors in powers of its generator.
//
// Every symbolic step is either Ramified (the generator value has order n
// modulo the previous value group) or Residue (degree p, the normalized
// generator has a residue generating an inseparable extension of degree p).
// For such steps v(sum x_j g^j) = min_j v(x_j) + j v(g), which gives values
// and residues in closed form.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vallab/errors.hpp"
#include "vallab/newton.hpp"
#include "vallab/ogroup.hpp"
#include "vallab/resfield.hpp"
#include "vallab/vbase.hpp"

namespace vallab {

enum class StepKind { ramified, residue };

struct StepInfo {
  std::size_t degree = 0;
  StepKind kind = StepKind::ramified;
  unsigned long e = 1;
  unsigned long f = 1;
  unsigned long m = 0;  // Ostrowski exponent: degree = p^m e f
  bool embedded = false;
  Rational new_value;                 // value of the generator
  std::optional<ResElem> new_residue; // residue of the normalized generator
  std::size_t recenterings = 0;

  bool defect() const { return m > 0; }
  std::string kind_name() const { return kind == StepKind::ramified ? "ramified" : "residue"; }
};

template <class G>
struct GroundOps;

template <>
struct GroundOps<Series> {
  static Series monomial(const SeriesTraits::Ctx& c, const Rational& s) {
    return Series::monomial(c, ResElem::one(c.base_field), s);
  }
  static ResFieldDesc residue_field(const SeriesTraits::Ctx& c) { return c.base_field; }
};

template <>
struct GroundOps<PSeries> {
  static PSeries monomial(const PSeriesTraits::Ctx& c, const Rational& s) {
    return PSeries::monomial(c, LaurentQ::constant(1), s);
  }
  static ResFieldDesc residue_field(const PSeriesTraits::Ctx& c) {
    return c.has_u ? ResFieldDesc::ratfun(c.p) : ResFieldDesc::finite(c.p);
  }
};

template <class G>
class TowerElem;

template <class G>
class Tower {
 public:
  using Ctx = typename G::Ctx;
  using Elem = TowerElem<G>;
  // Depth 0: ground element g. Depth d > 0: c holds degree-many depth d-1 reps.
  struct Rep {
    G g;
    std::vector<Rep> c;
  };

  // Ground with value group `base_group` and its residue field.
  Tower(const Ctx& ctx, const OGroup& base_group);

  const Ctx& ctx() const { return d_->ctx; }
  std::uint32_t prime() const { return d_->ctx.p; }
  std::size_t depth() const { return d_->levels.size(); }
  const OGroup& value_group() const { return group_at(depth()); }
  const ResFieldDesc& residue_field() const { return field_at(depth()); }
  const OGroup& base_group() const { return d_->base_group; }
  const ResFieldDesc& base_field() const { return d_->base_field; }
  const std::vector<StepInfo>& steps() const { return d_->steps; }
  std::size_t embedded_count() const { return d_->embedded.size(); }
  std::size_t level_degree(std::size_t level) const { return d_->levels.at(level - 1)->degree; }

  Elem ground(const G& x) const;
  Elem from_int(long n) const;
  Elem zero() const { return from_int(0); }
  Elem one() const { return from_int(1); }
  // Generator of symbolic level `level` (1-based depth).
  Elem gen(std::size_t level) const;
  // Root of the original polynomial of symbolic level `level` (generator plus recentering shift).
  Elem root(std::size_t level) const;
  // Embedded generator i (0-based), a ground element.
  const G& embedded_gen(std::size_t i) const { return d_->embedded.at(i); }

  Tower prefix(std::size_t depth) const;
  bool extends(const Tower& other) const;
  Elem embed(const Elem& x) const;

  // Element of value exactly s; s must lie in the value group.
  Elem witness(const Rational& s) const;
  // Element whose residue is r.
  Elem lift(const ResElem& r) const;

  // Adds a ground element as a generator. minpoly (monic) must vanish at g.
  Tower adjoin_embedded(const G& g, const std::vector<G>& minpoly) const;
  // Adjoins a root of the monic polynomial f (coefficients low degree first).
  std::pair<Tower, Elem> adjoin_root(std::vector<Elem> f) const;

  // Characteristic polynomial of multiplication by x over the previous level
  // (monic, low degree first), division free.
  std::vector<Elem> charpoly(const Elem& x) const;
  // Norm down to the ground.
  G norm_to_ground(const Elem& x) const;

  // --- representation-level arithmetic (public for TowerElem) ---
  Rep rep_zero(std::size_t d) const;
  Rep rep_ground(const G& x, std::size_t d) const;
  Rep add(const Rep& a, const Rep& b, std::size_t d) const;
  Rep neg(const Rep& a, std::size_t d) const;
  Rep mul(const Rep& a, const Rep& b, std::size_t d) const;
  Rep inverse(const Rep& a, std::size_t d) const;
  ValInfo val(const Rep& a, std::size_t d) const;
  ResElem residue(const Rep& a, std::size_t d) const;
  bool exact_zero(const Rep& a) const;
  bool vanishes(const Rep& a) const;
  Rep wrap(const Rep& a, std::size_t from, std::size_t to) const;
  std::string rep_string(const Rep& a, std::size_t d) const;

 private:
  struct Level {
    std::size_t degree = 0;
    std::vector<Rep> minpoly;  // c_0..c_{n-1}, monic, depth below
    StepKind kind = StepKind::ramified;
    Rational root_value;
    OGroup group = OGroup::trivial(1);
    ResFieldDesc field = ResFieldDesc::finite(2);
    Rep root;  // original root at this depth
    // Residue levels only.
    std::vector<Rep> witness_pows;  // m^j, depth below, v(m) = root_value
    ResElem rho;                    // residue of gen / m
    std::vector<Rep> lift_pows;     // W^i at this depth, residue(W) = generator of field
  };
  struct Data {
    Ctx ctx;
    OGroup base_group = OGroup::trivial(1);
    OGroup ground_group = OGroup::trivial(1);
    ResFieldDesc base_field = ResFieldDesc::finite(2);
    ResFieldDesc ground_field = ResFieldDesc::finite(2);
    std::vector<G> embedded;
    std::vector<StepInfo> steps;
    std::vector<std::shared_ptr<const Level>> levels;
  };

  explicit Tower(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  const OGroup& group_at(std::size_t d) const {
    return d == 0 ? d_->ground_group : d_->levels[d - 1]->group;
  }
  const ResFieldDesc& field_at(std::size_t d) const {
    return d == 0 ? d_->ground_field : d_->levels[d - 1]->field;
  }
  const Level& level(std::size_t d) const { return *d_->levels[d - 1]; }

  Rep mul_gen(const Rep& a, std::size_t d) const;
  Rep rep_witness(const Rational& s, std::size_t d) const;
  Rep rep_lift(const ResElem& r, std::size_t d) const;
  std::vector<Rep> rep_charpoly(const Rep& x, std::size_t d) const;
  Rep rep_pow(const Rep& a, unsigned long e, std::size_t d) const;

  std::shared_ptr<const Data> d_;

  template <class>
  friend class TowerElem;
};

/// Element of a tower, represented at the tower's top depth.
template <class G>
class TowerElem {
 public:
  using T = Tower<G>;
  using Rep = typename T::Rep;

  TowerElem(T tower, Rep r) : t_(std::move(tower)), r_(std::move(r)) {}

  const T& tower() const { return t_; }
  const Rep& rep() const { return r_; }

  TowerElem operator+(const TowerElem& o) const {
    auto [a, b] = align(*this, o);
    return TowerElem(a.t_, a.t_.add(a.r_, b.r_, a.t_.depth()));
  }
  TowerElem operator-() const { return TowerElem(t_, t_.neg(r_, t_.depth())); }
  TowerElem operator-(const TowerElem& o) const { return *this + (-o); }
  TowerElem operator*(const TowerElem& o) const {
    auto [a, b] = align(*this, o);
    return TowerElem(a.t_, a.t_.mul(a.r_, b.r_, a.t_.depth()));
  }
  TowerElem inverse() const { return TowerElem(t_, t_.inverse(r_, t_.depth())); }
  TowerElem operator/(const TowerElem& o) const {
    auto [a, b] = align(*this, o);
    return a * b.inverse();
  }
  TowerElem pow(unsigned long e) const {
    TowerElem r = t_.one(), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  ValInfo val() const { return t_.val(r_, t_.depth()); }
  ResElem residue() const { return t_.residue(r_, t_.depth()); }
  bool vanishes() const { return t_.vanishes(r_); }
  bool exact_zero() const { return t_.exact_zero(r_); }
  std::string to_string() const { return t_.rep_string(r_, t_.depth()); }

 private:
  static std::pair<TowerElem, TowerElem> align(const TowerElem& a, const TowerElem& b) {
    if (a.t_.depth() >= b.t_.depth()) return {a, a.t_.embed(b)};
    return {b.t_.embed(a), b};
  }
  T t_;
  Rep r_;
};

// Horner evaluation of a polynomial (low degree first).
template <class G>
TowerElem<G> eval_poly(const std::vector<TowerElem<G>>& f, const TowerElem<G>& x) {
  TowerElem<G> r = x.tower().zero();
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

}  // namespace vallab

#include "vallab/tower_impl.hpp"
