#include "vallab/ogroup.hpp"

#include <algorithm>
#include <sstream>

#include "vallab/errors.hpp"
#include "vallab/lattice.hpp"

namespace vallab {

namespace {

using lattice::IntMat;
using lattice::IntVec;

void check_rank(std::size_t a, std::size_t b) {
  if (a != b) {
    throw PreconditionError("rank mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

Integer common_denominator(const std::vector<LexValue>& vs) {
  Integer m = 1;
  for (const auto& v : vs) {
    for (const auto& c : v.coords()) m = lcm(m, c.get_den());
  }
  return m;
}

IntVec scale_to_int(const LexValue& v, const Rational& s) {
  IntVec out;
  out.reserve(v.rank());
  for (const auto& c : v.coords()) {
    Rational t = c * s;
    t.canonicalize();
    if (t.get_den() != 1) throw Error("internal: non-integral scaled lattice vector");
    out.push_back(t.get_num());
  }
  return out;
}

LexValue unscale(const IntVec& row, const Integer& s) {
  std::vector<Rational> cs;
  cs.reserve(row.size());
  for (const auto& x : row) {
    Rational q(x, s);
    q.canonicalize();
    cs.push_back(q);
  }
  return LexValue(std::move(cs));
}

Integer power(unsigned long p, long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
  return r;
}

long vp_or_zero(const Integer& z, unsigned long p) {
  if (p <= 1 || z == 0) return 0;
  return padic_valuation(z, p);
}

std::vector<LexValue> nonzero(std::vector<LexValue> vs) {
  vs.erase(std::remove_if(vs.begin(), vs.end(), [](const LexValue& v) { return v.is_zero(); }),
           vs.end());
  return vs;
}

// Level-k lattice of G scaled by m * p^k: open gens and closed gens / p^k.
IntMat scaled_level(const OGroup& g, const Integer& m, long k) {
  const Integer pk = power(g.prime() > 1 ? g.prime() : 1, k);
  const Rational s_open(m * pk);
  const Rational s_closed(m);
  IntMat rows;
  for (const auto& v : g.open_gens()) rows.push_back(scale_to_int(v, s_open));
  for (const auto& v : g.closed_gens()) rows.push_back(scale_to_int(v, s_closed));
  return rows;
}

// Level bound for membership of elements with denominators dividing m.
long closed_level_bound(const OGroup& g, const Integer& m) {
  const auto closed = nonzero(g.closed_gens());
  if (closed.empty()) return 0;
  IntMat rows;
  for (const auto& v : closed) rows.push_back(scale_to_int(v, Rational(m)));
  return vp_or_zero(lattice::pivot_product(lattice::hnf(rows)), g.prime());
}

std::size_t rank_of(const std::vector<LexValue>& vs) {
  const auto nz = nonzero(vs);
  if (nz.empty()) return 0;
  const Integer m = common_denominator(nz);
  IntMat rows;
  for (const auto& v : nz) rows.push_back(scale_to_int(v, Rational(m)));
  return lattice::hnf(rows).size();
}

std::vector<LexValue> hnf_basis(const std::vector<LexValue>& vs) {
  const auto nz = nonzero(vs);
  if (nz.empty()) return {};
  const Integer m = common_denominator(nz);
  IntMat rows;
  for (const auto& v : nz) rows.push_back(scale_to_int(v, Rational(m)));
  std::vector<LexValue> out;
  for (const auto& r : lattice::hnf(rows)) out.push_back(unscale(r, m));
  return out;
}

OGroup make_group(std::size_t rank, const std::vector<LexValue>& open,
                  const std::vector<LexValue>& closed, unsigned long prime) {
  std::vector<LexValue> gens = open;
  std::vector<std::size_t> idx;
  for (const auto& c : closed) {
    idx.push_back(gens.size());
    gens.push_back(c);
  }
  if (prime <= 1 && !idx.empty()) {
    // Closure under division by the trivial exponent is no closure at all.
    idx.clear();
  }
  return OGroup(rank, std::move(gens), std::move(idx), prime);
}

}  // namespace

// ---------------------------------------------------------------- LexValue

LexValue::LexValue(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw PreconditionError("LexValue rank must be positive");
  for (auto& c : coords_) c.canonicalize();
}

LexValue::LexValue(const Rational& scalar) : coords_{scalar} { coords_[0].canonicalize(); }

LexValue LexValue::zero(std::size_t rank) { return LexValue(std::vector<Rational>(rank, 0)); }

bool LexValue::is_zero() const { return leading_position() == rank(); }

std::size_t LexValue::leading_position() const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] != 0) return i;
  }
  return coords_.size();
}

bool LexValue::is_positive() const {
  const auto i = leading_position();
  return i < rank() && coords_[i] > 0;
}

LexValue LexValue::operator+(const LexValue& o) const {
  check_rank(rank(), o.rank());
  std::vector<Rational> r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = coords_[i] + o.coords_[i];
  return LexValue(std::move(r));
}

LexValue LexValue::operator-(const LexValue& o) const { return *this + (-o); }

LexValue LexValue::operator-() const {
  std::vector<Rational> r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = -coords_[i];
  return LexValue(std::move(r));
}

LexValue LexValue::operator*(const Rational& s) const {
  std::vector<Rational> r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = coords_[i] * s;
  return LexValue(std::move(r));
}

LexValue LexValue::operator/(const Rational& s) const {
  if (s == 0) throw DivisionByZero("LexValue divided by zero");
  std::vector<Rational> r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = coords_[i] / s;
  return LexValue(std::move(r));
}

bool LexValue::operator==(const LexValue& o) const { return coords_ == o.coords_; }

std::strong_ordering LexValue::operator<=>(const LexValue& o) const {
  check_rank(rank(), o.rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    if (coords_[i] < o.coords_[i]) return std::strong_ordering::less;
    if (coords_[i] > o.coords_[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string LexValue::to_string() const {
  if (rank() == 1) return vallab::to_string(coords_[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < rank(); ++i) {
    if (i) s += ", ";
    s += vallab::to_string(coords_[i]);
  }
  return s + ")";
}

// ------------------------------------------------------------------ OGroup

OGroup::OGroup(std::size_t rank, std::vector<LexValue> gens, std::vector<std::size_t> p_closed,
               unsigned long prime)
    : rank_(rank), gens_(std::move(gens)), p_closed_(std::move(p_closed)), prime_(prime) {
  if (rank_ == 0) throw PreconditionError("group rank must be positive");
  if (prime_ == 0 || (prime_ > 1 && !is_prime(prime_))) {
    throw PreconditionError("designated prime must be 1 or a prime");
  }
  for (const auto& g : gens_) check_rank(g.rank(), rank_);
  std::sort(p_closed_.begin(), p_closed_.end());
  p_closed_.erase(std::unique(p_closed_.begin(), p_closed_.end()), p_closed_.end());
  for (auto i : p_closed_) {
    if (i >= gens_.size()) throw PreconditionError("p_closed index out of range");
  }
  if (prime_ == 1 && !p_closed_.empty()) {
    throw PreconditionError("p-closed generators require a prime p > 1");
  }
}

OGroup OGroup::trivial(std::size_t rank, unsigned long prime) { return OGroup(rank, {}, {}, prime); }

OGroup OGroup::cyclic(const Rational& gen, unsigned long prime, bool closed) {
  std::vector<std::size_t> idx;
  if (closed) idx.push_back(0);
  return OGroup(1, {LexValue(gen)}, idx, prime);
}

bool OGroup::is_closed(std::size_t i) const {
  return std::binary_search(p_closed_.begin(), p_closed_.end(), i);
}

std::vector<LexValue> OGroup::open_gens() const {
  std::vector<LexValue> out;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (!is_closed(i)) out.push_back(gens_[i]);
  }
  return out;
}

std::vector<LexValue> OGroup::closed_gens() const {
  std::vector<LexValue> out;
  for (auto i : p_closed_) out.push_back(gens_[i]);
  return out;
}

OGroup OGroup::with_generator(const LexValue& g, bool closed) const {
  auto gens = gens_;
  auto idx = p_closed_;
  if (closed) idx.push_back(gens.size());
  gens.push_back(g);
  return OGroup(rank_, std::move(gens), std::move(idx), prime_);
}

std::string OGroup::to_string() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) os << ", ";
    os << gens_[i].to_string();
    if (is_closed(i)) os << "/p^inf";
  }
  os << ">";
  if (prime_ > 1) os << " (p=" << prime_ << ")";
  return os.str();
}

// --------------------------------------------------------------- algorithms

bool contains(const OGroup& g, const LexValue& x) {
  check_rank(g.rank(), x.rank());
  if (x.is_zero()) return true;
  const auto gens = nonzero(g.gens());
  if (gens.empty()) return false;
  std::vector<LexValue> all = gens;
  all.push_back(x);
  const Integer m = common_denominator(all);
  const long k = closed_level_bound(g, m);
  const IntMat basis = lattice::hnf(scaled_level(g, m, k));
  const Integer pk = power(g.prime() > 1 ? g.prime() : 1, k);
  return lattice::is_zero(lattice::reduce(scale_to_int(x, Rational(m * pk)), basis));
}

bool contains(const OGroup& g, const Rational& x) { return contains(g, LexValue(x)); }

std::size_t q_rank(const OGroup& g) { return rank_of(g.gens()); }

bool is_subgroup(const OGroup& h, const OGroup& g) {
  check_rank(h.rank(), g.rank());
  for (const auto& v : h.gens()) {
    if (!contains(g, v)) return false;
  }
  const auto gc = g.closed_gens();
  const std::size_t base = rank_of(gc);
  for (const auto& v : nonzero(h.closed_gens())) {
    if (g.prime() != h.prime()) return false;
    auto ext = gc;
    ext.push_back(v);
    if (rank_of(ext) != base) return false;
  }
  return true;
}

bool same_group(const OGroup& a, const OGroup& b) { return is_subgroup(a, b) && is_subgroup(b, a); }

GroupIndex index(const OGroup& g, const OGroup& h) {
  check_rank(g.rank(), h.rank());
  if (!is_subgroup(h, g)) throw PreconditionError("index: H is not a subgroup of G");
  if (q_rank(g) != q_rank(h)) return std::nullopt;
  const auto gc = nonzero(g.closed_gens());
  auto hc = nonzero(h.closed_gens());
  const std::size_t hc_rank = rank_of(hc);
  {
    auto joint = hc;
    joint.insert(joint.end(), gc.begin(), gc.end());
    if (rank_of(joint) != hc_rank) return std::nullopt;
  }
  const auto g_all = nonzero(g.gens());
  if (g_all.empty()) return Integer(1);
  if (gc.empty()) {
    // Lattices with the same span: ratio of covolumes on the pivot columns.
    std::vector<LexValue> both = g_all;
    for (const auto& v : h.gens()) both.push_back(v);
    const Integer m = common_denominator(both);
    IntMat gr, hr;
    for (const auto& v : g_all) gr.push_back(scale_to_int(v, Rational(m)));
    for (const auto& v : nonzero(h.gens())) hr.push_back(scale_to_int(v, Rational(m)));
    const Integer dg = lattice::pivot_product(lattice::hnf(gr));
    const Integer dh = hr.empty() ? Integer(1) : lattice::pivot_product(lattice::hnf(hr));
    return Integer(dh / dg);
  }
  // G = G_0 + H whenever the index is finite, so enumerate cosets of the
  // level-0 lattice modulo H.
  constexpr std::size_t kMaxCosets = 20000;
  std::vector<LexValue> reps{LexValue::zero(g.rank())};
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const auto& gen : g_all) {
      const LexValue cand = reps[i] + gen;
      bool found = false;
      for (const auto& r : reps) {
        if (contains(h, cand - r)) {
          found = true;
          break;
        }
      }
      if (!found) {
        reps.push_back(cand);
        if (reps.size() > kMaxCosets) throw UnsupportedError("index: coset enumeration too large");
      }
    }
  }
  return Integer(static_cast<unsigned long>(reps.size()));
}

bool is_p_divisible(const OGroup& g, unsigned long p) {
  if (p <= 1) return true;
  for (const auto& v : g.gens()) {
    if (!contains(g, v / Rational(static_cast<long>(p)))) return false;
  }
  return true;
}

OGroup intersect_tail(const OGroup& g, std::size_t cut) {
  if (cut == 0) return g;
  if (cut >= g.rank()) return OGroup::trivial(g.rank(), g.prime());
  const auto gens = nonzero(g.gens());
  if (gens.empty()) return OGroup::trivial(g.rank(), g.prime());
  const Integer m = common_denominator(gens);
  const auto closed = nonzero(g.closed_gens());
  std::vector<LexValue> tail_closed;
  long k = 0;
  if (!closed.empty()) {
    IntMat rows;
    for (const auto& v : closed) rows.push_back(scale_to_int(v, Rational(m)));
    Integer head = 1;
    for (const auto& r : lattice::hnf(rows)) {
      if (lattice::pivot(r) < cut) {
        head *= r[lattice::pivot(r)];
      } else {
        tail_closed.push_back(unscale(r, m));
      }
    }
    k = vp_or_zero(head, g.prime());
  }
  const Integer pk = power(g.prime() > 1 ? g.prime() : 1, k);
  std::vector<LexValue> tail_open;
  for (const auto& r : lattice::hnf(scaled_level(g, m, k))) {
    if (lattice::pivot(r) >= cut) tail_open.push_back(unscale(r, m * pk));
  }
  return make_group(g.rank(), tail_open, tail_closed, g.prime());
}

ConvexPart convex_core(const OGroup& g, const LexValue& x, unsigned long /*p*/) {
  check_rank(g.rank(), x.rank());
  if (!x.is_positive()) throw PreconditionError("convex_core: element must be positive");
  if (!contains(g, x)) throw PreconditionError("convex_core: element not in group");
  const std::size_t cut = x.leading_position();
  return ConvexPart{intersect_tail(g, cut), cut};
}

bool is_roughly_p_divisible(const OGroup& g, const std::optional<LexValue>& vp, unsigned long p) {
  if (!vp) return is_p_divisible(g, p);
  return is_p_divisible(convex_core(g, *vp, p).group, p);
}

OGroup hull(const OGroup& g, HullKind kind, std::optional<unsigned> level, unsigned long p) {
  if (p <= 1 || !is_prime(p)) throw PreconditionError("hull: p must be a prime");
  if (g.prime() > 1 && g.prime() != p) throw PreconditionError("hull: prime mismatch");
  std::vector<LexValue> open = g.open_gens();
  std::vector<LexValue> closed = g.closed_gens();
  if (kind == HullKind::p_div) {
    if (!level) {
      closed.insert(closed.end(), open.begin(), open.end());
      return simplify(make_group(g.rank(), {}, closed, p));
    }
    const Integer pl = power(p, *level);
    for (auto& v : open) v = v / Rational(pl);
    return simplify(make_group(g.rank(), open, closed, p));
  }
  if (!level) throw PreconditionError("hull: the p'-divisible hull is only materialized truncated");
  std::vector<LexValue> o2, c2;
  for (unsigned m = 1; m <= *level; ++m) {
    if (m % p == 0) continue;
    for (const auto& v : open) o2.push_back(v / Rational(m));
    for (const auto& v : closed) c2.push_back(v / Rational(m));
  }
  return simplify(make_group(g.rank(), o2, c2, g.prime() > 1 ? g.prime() : p));
}

OGroup lex_compose(const OGroup& outer, const OGroup& inner) {
  unsigned long prime = outer.prime();
  if (prime == 1) {
    prime = inner.prime();
  } else if (inner.prime() != 1 && inner.prime() != prime) {
    throw PreconditionError("lex_compose: prime mismatch");
  }
  const std::size_t r = outer.rank() + inner.rank();
  auto pad = [&](const LexValue& v, bool left) {
    std::vector<Rational> cs(r, 0);
    const std::size_t off = left ? 0 : outer.rank();
    for (std::size_t i = 0; i < v.rank(); ++i) cs[off + i] = v[i];
    return LexValue(std::move(cs));
  };
  std::vector<LexValue> open, closed;
  for (const auto& v : outer.open_gens()) open.push_back(pad(v, true));
  for (const auto& v : outer.closed_gens()) closed.push_back(pad(v, true));
  for (const auto& v : inner.open_gens()) open.push_back(pad(v, false));
  for (const auto& v : inner.closed_gens()) closed.push_back(pad(v, false));
  return make_group(r, open, closed, prime);
}

OGroup quotient_by_convex(const OGroup& g, const ConvexPart& h) {
  check_rank(g.rank(), h.group.rank());
  const std::size_t cut = h.cut_index;
  if (cut > g.rank()) throw PreconditionError("quotient_by_convex: cut index out of range");
  for (const auto& v : h.group.gens()) {
    if (v.leading_position() < cut) throw PreconditionError("quotient_by_convex: H not convex");
  }
  if (!is_subgroup(h.group, g) || !is_subgroup(intersect_tail(g, cut), h.group)) {
    throw PreconditionError("quotient_by_convex: H not convex");
  }
  if (cut == 0) return OGroup::trivial(1, g.prime());
  auto project = [&](const LexValue& v) {
    return LexValue(std::vector<Rational>(v.coords().begin(), v.coords().begin() + cut));
  };
  std::vector<LexValue> open, closed;
  for (const auto& v : g.open_gens()) open.push_back(project(v));
  for (const auto& v : g.closed_gens()) closed.push_back(project(v));
  return make_group(cut, nonzero(open), nonzero(closed), g.prime());
}

std::optional<unsigned long> order_modulo(const OGroup& g, const LexValue& x, unsigned long limit) {
  for (unsigned long k = 1; k <= limit; ++k) {
    if (contains(g, x * Rational(static_cast<long>(k)))) return k;
  }
  return std::nullopt;
}

bool has_element_below(const OGroup& g, const LexValue& x) {
  check_rank(g.rank(), x.rank());
  if (!x.is_positive()) return false;
  const std::size_t c = x.leading_position();
  if (!nonzero(intersect_tail(g, c + 1).gens()).empty()) return true;
  const OGroup core = intersect_tail(g, c);
  for (const auto& v : core.closed_gens()) {
    if (v[c] != 0) return true;
  }
  Integer num = 0, den = 1;
  for (const auto& v : core.open_gens()) den = lcm(den, v[c].get_den());
  for (const auto& v : core.open_gens()) {
    Rational t = v[c] * Rational(den);
    t.canonicalize();
    num = gcd(num, t.get_num());
  }
  if (num == 0) return false;
  Rational delta(num, den);
  delta.canonicalize();
  return delta < x[c];
}

OGroup simplify(const OGroup& g) {
  return make_group(g.rank(), hnf_basis(g.open_gens()), hnf_basis(g.closed_gens()), g.prime());
}

// -------------------------------------------------------------------- JSON

namespace {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    return make_rational(j[0].get<long>(), j[1].get<long>());
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw PreconditionError("expected a rational as [num, den], integer or string");
}

nlohmann::json rational_to_json(const Rational& q) {
  return nlohmann::json::array({std::stol(q.get_num().get_str()), std::stol(q.get_den().get_str())});
}

}  // namespace

nlohmann::json to_json(const LexValue& v) {
  if (v.rank() == 1) return rational_to_json(v[0]);
  auto arr = nlohmann::json::array();
  for (const auto& c : v.coords()) arr.push_back(rational_to_json(c));
  return arr;
}

LexValue lex_value_from_json(const nlohmann::json& j, std::size_t rank) {
  if (rank == 1) {
    if (j.is_array() && j.size() == 1) return LexValue(rational_from_json(j[0]));
    return LexValue(rational_from_json(j));
  }
  if (!j.is_array() || j.size() != rank) throw PreconditionError("LexValue JSON rank mismatch");
  std::vector<Rational> cs;
  for (const auto& e : j) cs.push_back(rational_from_json(e));
  return LexValue(std::move(cs));
}

nlohmann::json to_json(const OGroup& g) {
  nlohmann::json j;
  j["rank"] = g.rank();
  auto gens = nlohmann::json::array();
  for (const auto& v : g.gens()) gens.push_back(to_json(v));
  j["gens"] = gens;
  j["p_closed"] = g.p_closed();
  j["prime"] = g.prime();
  return j;
}

OGroup ogroup_from_json(const nlohmann::json& j) {
  try {
    const std::size_t rank = j.at("rank").get<std::size_t>();
    std::vector<LexValue> gens;
    for (const auto& e : j.at("gens")) gens.push_back(lex_value_from_json(e, rank));
    std::vector<std::size_t> closed;
    if (j.contains("p_closed")) closed = j.at("p_closed").get<std::vector<std::size_t>>();
    const unsigned long prime = j.value("prime", 1UL);
    return OGroup(rank, std::move(gens), std::move(closed), prime);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed group JSON: ") + e.what());
  }
}

}  // namespace vallab
