#pragma once

// Member definitions for tower.hpp.

namespace vallab {

namespace tower_detail {

inline unsigned long ostrowski_exponent(std::size_t degree, unsigned long e, unsigned long f,
                                        unsigned long p) {
  if (degree % (e * f) != 0) throw ConstructionError("degree is not divisible by e*f");
  unsigned long q = degree / (e * f), m = 0;
  while (q > 1) {
    if (q % p != 0) throw ConstructionError("degree/(e*f) is not a power of p");
    q /= p;
    ++m;
  }
  return m;
}

// All elements of a small finite field.
inline std::vector<ResElem> enumerate_finite(const ResFieldDesc& f) {
  std::vector<ResElem> out;
  const std::uint32_t p = f.characteristic();
  std::vector<std::uint32_t> cs(f.degree(), 0);
  for (;;) {
    out.emplace_back(f, FpPoly(p, cs), FpPoly::constant(p, 1));
    std::size_t i = 0;
    while (i < cs.size() && ++cs[i] == p) cs[i++] = 0;
    if (i == cs.size()) break;
  }
  return out;
}

inline unsigned long binom_mod(unsigned long n, unsigned long k, unsigned long p) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return mpz_fdiv_ui(b.get_mpz_t(), p);
}

}  // namespace tower_detail

template <class G>
Tower<G>::Tower(const Ctx& ctx, const OGroup& base_group) {
  if (base_group.rank() != 1) throw PreconditionError("tower value groups have rank 1");
  if (base_group.prime() != 1 && base_group.prime() != ctx.p) {
    throw PreconditionError("value group prime differs from the residue characteristic");
  }
  auto d = std::make_shared<Data>();
  d->ctx = ctx;
  d->base_group = base_group;
  d->ground_group = base_group;
  d->base_field = GroundOps<G>::residue_field(ctx);
  d->ground_field = d->base_field;
  d_ = std::move(d);
}

// ------------------------------------------------------------ rep algebra

template <class G>
typename Tower<G>::Rep Tower<G>::rep_zero(std::size_t d) const {
  Rep r{G::zero(d_->ctx), {}};
  if (d == 0) return r;
  r.c.assign(level(d).degree, rep_zero(d - 1));
  return r;
}

template <class G>
typename Tower<G>::Rep Tower<G>::wrap(const Rep& a, std::size_t from, std::size_t to) const {
  Rep r = a;
  for (std::size_t k = from; k < to; ++k) {
    Rep w{G::zero(d_->ctx), {}};
    w.c.assign(level(k + 1).degree, rep_zero(k));
    w.c[0] = std::move(r);
    r = std::move(w);
  }
  return r;
}

template <class G>
typename Tower<G>::Rep Tower<G>::rep_ground(const G& x, std::size_t d) const {
  return wrap(Rep{x, {}}, 0, d);
}

template <class G>
bool Tower<G>::exact_zero(const Rep& a) const {
  if (a.c.empty()) return a.g.vanishes() && a.g.is_exact();
  return std::all_of(a.c.begin(), a.c.end(), [&](const Rep& x) { return exact_zero(x); });
}

template <class G>
bool Tower<G>::vanishes(const Rep& a) const {
  if (a.c.empty()) return a.g.vanishes();
  return std::all_of(a.c.begin(), a.c.end(), [&](const Rep& x) { return vanishes(x); });
}

template <class G>
typename Tower<G>::Rep Tower<G>::add(const Rep& a, const Rep& b, std::size_t d) const {
  if (d == 0) return Rep{a.g + b.g, {}};
  Rep r{G::zero(d_->ctx), {}};
  r.c.reserve(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c.push_back(add(a.c[i], b.c[i], d - 1));
  return r;
}

template <class G>
typename Tower<G>::Rep Tower<G>::neg(const Rep& a, std::size_t d) const {
  if (d == 0) return Rep{-a.g, {}};
  Rep r{G::zero(d_->ctx), {}};
  r.c.reserve(a.c.size());
  for (const auto& x : a.c) r.c.push_back(neg(x, d - 1));
  return r;
}

template <class G>
typename Tower<G>::Rep Tower<G>::mul(const Rep& a, const Rep& b, std::size_t d) const {
  if (d == 0) return Rep{a.g * b.g, {}};
  const Level& L = level(d);
  const std::size_t n = L.degree;
  std::vector<Rep> prod(2 * n - 1, rep_zero(d - 1));
  std::vector<bool> az(n), bz(n);
  for (std::size_t i = 0; i < n; ++i) {
    az[i] = exact_zero(a.c[i]);
    bz[i] = exact_zero(b.c[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (az[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (bz[j]) continue;
      prod[i + j] = add(prod[i + j], mul(a.c[i], b.c[j], d - 1), d - 1);
    }
  }
  for (std::size_t k = 2 * n - 1; k-- > n;) {
    if (exact_zero(prod[k])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (exact_zero(L.minpoly[j])) continue;
      prod[k - n + j] = add(prod[k - n + j], neg(mul(prod[k], L.minpoly[j], d - 1), d - 1), d - 1);
    }
  }
  prod.resize(n);
  return Rep{G::zero(d_->ctx), std::move(prod)};
}

template <class G>
typename Tower<G>::Rep Tower<G>::mul_gen(const Rep& a, std::size_t d) const {
  const Level& L = level(d);
  const std::size_t n = L.degree;
  Rep r{G::zero(d_->ctx), std::vector<Rep>(n, rep_zero(d - 1))};
  for (std::size_t k = 0; k + 1 < n; ++k) r.c[k + 1] = a.c[k];
  const Rep& top = a.c[n - 1];
  if (!exact_zero(top)) {
    for (std::size_t j = 0; j < n; ++j) {
      r.c[j] = add(r.c[j], neg(mul(top, L.minpoly[j], d - 1), d - 1), d - 1);
    }
  }
  return r;
}

template <class G>
typename Tower<G>::Rep Tower<G>::rep_pow(const Rep& a, unsigned long e, std::size_t d) const {
  Rep r = rep_ground(G::one(d_->ctx), d), b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b, d);
    e >>= 1;
    if (e) b = mul(b, b, d);
  }
  return r;
}

template <class G>
std::vector<typename Tower<G>::Rep> Tower<G>::rep_charpoly(const Rep& x, std::size_t d) const {
  const std::size_t n = level(d).degree;
  // cols[k] = x * g^k; A[i][k] = cols[k].c[i].
  std::vector<Rep> cols{x};
  for (std::size_t k = 1; k < n; ++k) cols.push_back(mul_gen(cols.back(), d));
  auto A = [&](std::size_t i, std::size_t k) -> const Rep& { return cols[k].c[i]; };
  const Rep one = rep_ground(G::one(d_->ctx), d - 1);
  // Berkowitz: coefficients of det(X - A) high degree first.
  std::vector<Rep> cur{one};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rep> t{one, neg(A(k, k), d - 1)};
    std::vector<Rep> v;
    for (std::size_t l = 0; l < k; ++l) v.push_back(A(l, k));
    for (std::size_t i = 0; i < k; ++i) {
      Rep dot = rep_zero(d - 1);
      for (std::size_t l = 0; l < k; ++l) dot = add(dot, mul(A(k, l), v[l], d - 1), d - 1);
      t.push_back(neg(dot, d - 1));
      if (i + 1 < k) {
        std::vector<Rep> nv;
        for (std::size_t r = 0; r < k; ++r) {
          Rep s = rep_zero(d - 1);
          for (std::size_t l = 0; l < k; ++l) s = add(s, mul(A(r, l), v[l], d - 1), d - 1);
          nv.push_back(std::move(s));
        }
        v = std::move(nv);
      }
    }
    std::vector<Rep> next;
    for (std::size_t r = 0; r < k + 2; ++r) {
      Rep s = rep_zero(d - 1);
      for (std::size_t c = 0; c <= std::min(r, k); ++c) {
        s = add(s, mul(t[r - c], cur[c], d - 1), d - 1);
      }
      next.push_back(std::move(s));
    }
    cur = std::move(next);
  }
  std::reverse(cur.begin(), cur.end());
  return cur;
}

template <class G>
typename Tower<G>::Rep Tower<G>::inverse(const Rep& a, std::size_t d) const {
  if (d == 0) return Rep{a.g.inverse(), {}};
  const auto cp = rep_charpoly(a, d);
  const std::size_t n = cp.size() - 1;
  if (vanishes(cp[0])) throw DivisionByZero("inverse of an element with vanishing norm");
  // Cayley-Hamilton: x^{-1} = -(x^{n-1} + c_{n-1} x^{n-2} + ... + c_1) / c_0.
  Rep q = wrap(cp[n], d - 1, d);
  for (std::size_t i = n - 1; i >= 1; --i) q = add(mul(q, a, d), wrap(cp[i], d - 1, d), d);
  const Rep inv0 = inverse(neg(cp[0], d - 1), d - 1);
  return mul(q, wrap(inv0, d - 1, d), d);
}

template <class G>
ValInfo Tower<G>::val(const Rep& a, std::size_t d) const {
  if (d == 0) return a.g.val();
  const Rational s = level(d).root_value;
  std::optional<Rational> known, bound;
  bool any_bound = false, unbounded = false;
  for (std::size_t j = 0; j < a.c.size(); ++j) {
    const ValInfo v = val(a.c[j], d - 1);
    const Rational shift = s * Rational(static_cast<long>(j));
    if (v.known) {
      const Rational c = v.value + shift;
      if (!known || c < *known) known = c;
    } else if (v.bound) {
      const Rational c = *v.bound + shift;
      any_bound = true;
      if (!bound || c < *bound) bound = c;
    } else {
      unbounded = true;
    }
  }
  (void)unbounded;
  if (known && (!any_bound || *known < *bound)) return ValInfo::exact(*known);
  if (known) return ValInfo::at_least(std::min(*known, *bound));
  return ValInfo::at_least(bound);
}

template <class G>
ResElem Tower<G>::residue(const Rep& a, std::size_t d) const {
  const ValInfo v = val(a, d);
  if (!v.known) throw PrecisionError("residue of an element with indeterminate value");
  if (v.value != 0) {
    throw PreconditionError("residue requires value 0, got " + vallab::to_string(v.value));
  }
  if (d == 0) return vallab::residue(a.g);
  const Level& L = level(d);
  if (L.kind == StepKind::ramified) return residue(a.c[0], d - 1);
  ResElem sum = ResElem::zero(L.field);
  ResElem rp = ResElem::one(L.field);
  for (std::size_t j = 0; j < a.c.size(); ++j) {
    if (j > 0) rp = rp * L.rho;
    const ValInfo vj = val(a.c[j], d - 1);
    if (!vj.known || vj.value + L.root_value * Rational(static_cast<long>(j)) != 0) continue;
    sum = sum + residue(mul(a.c[j], L.witness_pows[j], d - 1), d - 1) * rp;
  }
  return sum;
}

template <class G>
typename Tower<G>::Rep Tower<G>::rep_witness(const Rational& s, std::size_t d) const {
  if (!contains(group_at(d), s)) {
    throw PreconditionError("no element of value " + vallab::to_string(s) + " in the value group");
  }
  if (d == 0) return Rep{GroundOps<G>::monomial(d_->ctx, s), {}};
  const Level& L = level(d);
  if (L.kind == StepKind::residue) return wrap(rep_witness(s, d - 1), d - 1, d);
  for (std::size_t j = 0; j < L.degree; ++j) {
    const Rational rest = s - L.root_value * Rational(static_cast<long>(j));
    if (!contains(group_at(d - 1), rest)) continue;
    Rep w = wrap(rep_witness(rest, d - 1), d - 1, d);
    for (std::size_t k = 0; k < j; ++k) w = mul_gen(w, d);
    return w;
  }
  throw ConstructionError("witness decomposition failed at a ramified level");
}

template <class G>
typename Tower<G>::Rep Tower<G>::rep_lift(const ResElem& r, std::size_t d) const {
  if (d == 0) return Rep{lift_residue(d_->ctx, r), {}};
  const Level& L = level(d);
  if (L.kind == StepKind::ramified) return wrap(rep_lift(r, d - 1), d - 1, d);
  if (r.is_zero()) return rep_zero(d);
  const auto comps = decompose(promote(r, L.field.level()));
  Rep sum = rep_zero(d);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].is_zero()) continue;
    sum = add(sum, mul(wrap(rep_lift(comps[i], d - 1), d - 1, d), L.lift_pows[i], d), d);
  }
  return sum;
}

template <class G>
std::string Tower<G>::rep_string(const Rep& a, std::size_t d) const {
  if (d == 0) return a.g.to_string();
  std::string s;
  const std::string var = "x" + std::to_string(d);
  for (std::size_t j = 0; j < a.c.size(); ++j) {
    if (exact_zero(a.c[j])) continue;
    if (!s.empty()) s += " + ";
    s += "{" + rep_string(a.c[j], d - 1) + "}";
    if (j == 1) s += "*" + var;
    if (j > 1) s += "*" + var + "^" + std::to_string(j);
  }
  return s.empty() ? "0" : s;
}

// ------------------------------------------------------------- elements

template <class G>
TowerElem<G> Tower<G>::ground(const G& x) const {
  return Elem(*this, rep_ground(x, depth()));
}

template <class G>
TowerElem<G> Tower<G>::from_int(long n) const {
  return ground(G::from_int(d_->ctx, n));
}

template <class G>
TowerElem<G> Tower<G>::gen(std::size_t lvl) const {
  if (lvl == 0 || lvl > depth()) throw PreconditionError("no such tower level");
  Rep g = rep_zero(lvl);
  g.c[1] = rep_ground(G::one(d_->ctx), lvl - 1);
  return Elem(*this, wrap(g, lvl, depth()));
}

template <class G>
TowerElem<G> Tower<G>::root(std::size_t lvl) const {
  if (lvl == 0 || lvl > depth()) throw PreconditionError("no such tower level");
  return Elem(*this, wrap(level(lvl).root, lvl, depth()));
}

template <class G>
Tower<G> Tower<G>::prefix(std::size_t dep) const {
  if (dep > depth()) throw PreconditionError("prefix deeper than the tower");
  auto d = std::make_shared<Data>(*d_);
  d->levels.resize(dep);
  d->steps.resize(d->embedded.size() + dep);
  return Tower(std::move(d));
}

template <class G>
bool Tower<G>::extends(const Tower& o) const {
  if (o.depth() > depth()) return false;
  if (o.depth() == 0) return o.embedded_count() <= embedded_count();
  if (o.embedded_count() != embedded_count()) return false;
  for (std::size_t i = 0; i < o.depth(); ++i) {
    if (o.d_->levels[i] != d_->levels[i]) return false;
  }
  return true;
}

template <class G>
TowerElem<G> Tower<G>::embed(const Elem& x) const {
  if (!extends(x.tower())) throw PreconditionError("element belongs to an unrelated tower");
  return Elem(*this, wrap(x.rep(), x.tower().depth(), depth()));
}

template <class G>
TowerElem<G> Tower<G>::witness(const Rational& s) const {
  return Elem(*this, rep_witness(s, depth()));
}

template <class G>
TowerElem<G> Tower<G>::lift(const ResElem& r) const {
  return Elem(*this, rep_lift(r, depth()));
}

template <class G>
std::vector<TowerElem<G>> Tower<G>::charpoly(const Elem& x) const {
  if (depth() == 0) throw PreconditionError("charpoly needs a symbolic level");
  const Elem y = embed(x);
  const Tower below = prefix(depth() - 1);
  std::vector<Elem> out;
  for (auto& r : rep_charpoly(y.rep(), depth())) out.emplace_back(below, std::move(r));
  return out;
}

template <class G>
G Tower<G>::norm_to_ground(const Elem& x) const {
  Elem cur = embed(x);
  while (cur.tower().depth() > 0) {
    const auto cp = cur.tower().charpoly(cur);
    const std::size_t n = cp.size() - 1;
    cur = n % 2 == 0 ? cp[0] : -cp[0];
  }
  return cur.rep().g;
}

// ------------------------------------------------------------ adjunction

template <class G>
Tower<G> Tower<G>::adjoin_embedded(const G& g, const std::vector<G>& minpoly) const {
  if (depth() > 0) throw PreconditionError("embedded steps must precede symbolic steps");
  if (minpoly.size() < 2) throw PreconditionError("minimal polynomial must have degree >= 1");
  const std::size_t n = minpoly.size() - 1;
  if (!(minpoly.back() - G::one(d_->ctx)).vanishes()) {
    throw PreconditionError("minimal polynomial must be monic");
  }
  G acc = G::zero(d_->ctx);
  for (std::size_t i = minpoly.size(); i-- > 0;) acc = acc * g + minpoly[i];
  if (!acc.vanishes()) throw ConstructionError("embedded generator is not a root of its polynomial");
  const std::uint32_t p = d_->ctx.p;
  const Rational s = g.val().get();
  auto d = std::make_shared<Data>(*d_);
  StepInfo st;
  st.degree = n;
  st.embedded = true;
  st.new_value = s;
  if (!contains(d->ground_group, s)) {
    const auto ord = order_modulo(d->ground_group, LexValue(s), n);
    if (!ord || *ord != n) throw UnsupportedError("embedded step mixes ramification and residue growth");
    st.kind = StepKind::ramified;
    st.e = n;
    d->ground_group = simplify(d->ground_group.with_generator(LexValue(s)));
  } else {
    const G m = GroundOps<G>::monomial(d_->ctx, s);
    const ResElem rho = vallab::residue(g * m.inverse());
    const ResFieldDesc& F = d->ground_field;
    if (!F.is_function_field() || rho.field().level() != F.level() + 1 || n != p) {
      throw UnsupportedError("embedded generator does not give a degree-p residue step");
    }
    const auto comps = decompose(rho);
    if (std::all_of(comps.begin() + 1, comps.end(), [](const ResElem& c) { return c.is_zero(); })) {
      throw NoStepDetected("embedded generator residue already lies in the residue field");
    }
    st.kind = StepKind::residue;
    st.f = n;
    st.new_residue = rho;
    d->ground_field = rho.field();
  }
  st.m = tower_detail::ostrowski_exponent(n, st.e, st.f, p);
  d->embedded.push_back(g);
  d->steps.push_back(st);
  return Tower(std::move(d));
}

template <class G>
std::pair<Tower<G>, TowerElem<G>> Tower<G>::adjoin_root(std::vector<Elem> fe) const {
  const std::size_t D = depth();
  if (fe.size() < 2) throw PreconditionError("polynomial must have degree >= 1");
  const std::size_t n = fe.size() - 1;
  std::vector<Rep> f;
  for (auto& c : fe) f.push_back(embed(c).rep());
  if (!vanishes(add(f[n], neg(rep_ground(G::one(d_->ctx), D), D), D))) {
    throw PreconditionError("polynomial must be monic");
  }
  if (n == 1) throw NoStepDetected("linear polynomial: its root already lies in the field");
  const std::uint32_t p = d_->ctx.p;
  const OGroup& G0 = group_at(D);
  const ResFieldDesc& F = field_at(D);
  Rep shift = rep_zero(D);
  constexpr std::size_t kMaxRecenter = 64;

  for (std::size_t iter = 0; iter < kMaxRecenter; ++iter) {
    std::vector<CoeffValue> cv;
    for (const auto& c : f) {
      const ValInfo v = val(c, D);
      if (v.known) {
        cv.push_back(CoeffValue::of(v.value));
      } else if (v.bound) {
        cv.push_back(CoeffValue::bounded(LexValue(*v.bound)));
      } else {
        cv.push_back(CoeffValue::exact_zero());
      }
    }
    if (cv[0].kind == CoeffValue::Kind::zero) {
      throw NoStepDetected("the polynomial has a root in the field (constant term vanishes)");
    }
    if (cv[0].kind == CoeffValue::Kind::at_least) {
      throw PrecisionError("constant term indeterminate at precision");
    }
    const Polygon P = polygon(cv);
    if (P.segments.size() != 1) {
      throw NotSingleSlope("Newton polygon has " + std::to_string(P.segments.size()) + " segments");
    }
    const Rational s = -P.segments[0].slope[0];

    if (!contains(G0, s)) {
      const auto ord = order_modulo(G0, LexValue(s), n);
      if (!ord || *ord != n) throw UnsupportedError("step mixes ramification and residue growth");
      auto L = std::make_shared<Level>();
      L->degree = n;
      L->minpoly.assign(f.begin(), f.begin() + static_cast<long>(n));
      L->kind = StepKind::ramified;
      L->root_value = s;
      L->group = simplify(G0.with_generator(LexValue(s)));
      L->field = F;
      auto data = std::make_shared<Data>(*d_);
      data->levels.push_back(L);
      StepInfo st;
      st.degree = n;
      st.kind = StepKind::ramified;
      st.e = n;
      st.new_value = s;
      st.recenterings = iter;
      st.m = tower_detail::ostrowski_exponent(n, st.e, st.f, p);
      data->steps.push_back(st);
      Tower nt(data);
      Rep g = nt.rep_zero(D + 1);
      g.c[1] = nt.rep_ground(G::one(d_->ctx), D);
      L->root = nt.add(g, nt.wrap(shift, D, D + 1), D + 1);
      return {nt, nt.root(D + 1)};
    }

    // Value in the group: reduce f(mY)/m^n to the residue field.
    const Rep m = rep_witness(s, D);
    const Rep W = rep_witness(-s * Rational(static_cast<long>(n)), D);
    std::vector<ResElem> h(n + 1, ResElem::zero(F));
    Rep mk = rep_ground(G::one(d_->ctx), D);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k > 0) mk = mul(mk, m, D);
      const Rational off = s * Rational(static_cast<long>(k)) - s * Rational(static_cast<long>(n));
      if (cv[k].kind == CoeffValue::Kind::known) {
        if (cv[k].v[0] + off == 0) h[k] = residue(mul(mul(f[k], mk, D), W, D), D);
      } else if (cv[k].kind == CoeffValue::Kind::at_least && cv[k].v[0] + off <= 0) {
        throw PrecisionError("reduced coefficient indeterminate at precision");
      }
    }
    const ResElem lead = h[n];
    for (auto& x : h) {
      x = x / lead;
      if (F.is_function_field()) x = promote(x, F.level());
    }

    std::optional<ResElem> r;
    bool residue_step = false;
    bool pure = n == p;
    for (std::size_t k = 1; k < n && pure; ++k) pure = h[k].is_zero();
    if (pure) {
      r = pth_root(-h[0]);
      if (!r) {
        if (!F.is_function_field()) throw UnsupportedError("unexpected residue equation");
        residue_step = true;
      }
    } else if (n % p != 0) {
      const ResElem cand = -h[n - 1] / ResElem::from_int(F, static_cast<long>(n));
      bool ok = true;
      for (std::size_t k = 0; k <= n && ok; ++k) {
        const auto b = tower_detail::binom_mod(n, k, p);
        ok = h[k] == ResElem::from_int(F, static_cast<long>(b)) * (-cand).pow(static_cast<long>(n - k));
      }
      if (ok) r = cand;
    }
    if (!r && !residue_step) {
      if (!F.is_function_field() && F.degree() * 1.0 * p < 1e5) {
        for (const auto& y : tower_detail::enumerate_finite(F)) {
          ResElem acc = ResElem::zero(F);
          for (std::size_t k = n + 1; k-- > 0;) acc = acc * y + h[k];
          if (acc.is_zero()) throw NoStepDetected("reduced polynomial has a root in the residue field");
        }
      }
      throw UnsupportedError("reduced polynomial of unsupported shape");
    }

    if (residue_step) {
      auto [Fn, rho] = adjoin_pth_root(F, -h[0]);
      auto L = std::make_shared<Level>();
      L->degree = n;
      L->minpoly.assign(f.begin(), f.begin() + static_cast<long>(n));
      L->kind = StepKind::residue;
      L->root_value = s;
      L->group = G0;
      L->field = Fn;
      Rep mj = rep_ground(G::one(d_->ctx), D);
      for (std::size_t j = 0; j < n; ++j) {
        L->witness_pows.push_back(mj);
        mj = mul(mj, m, D);
      }
      L->rho = rho;
      auto data = std::make_shared<Data>(*d_);
      data->levels.push_back(L);
      StepInfo st;
      st.degree = n;
      st.kind = StepKind::residue;
      st.f = n;
      st.new_value = s;
      st.new_residue = rho;
      st.recenterings = iter;
      st.m = tower_detail::ostrowski_exponent(n, st.e, st.f, p);
      data->steps.push_back(st);
      Tower nt(data);
      Rep g = nt.rep_zero(D + 1);
      g.c[1] = nt.rep_ground(G::one(d_->ctx), D);
      L->root = nt.add(g, nt.wrap(shift, D, D + 1), D + 1);
      // W with residue u^{1/p^{K+1}}, the generator of the new residue field.
      const Rep unit = nt.mul(g, nt.wrap(rep_witness(-s, D), D, D + 1), D + 1);
      const ResElem rho_u = nt.residue(unit, D + 1);
      const auto comps = decompose(promote(rho_u, Fn.level()));
      std::size_t j = 0;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].is_zero()) continue;
        if (j != 0 || i == 0) throw UnsupportedError("residue of the new generator is not monomial in u");
        j = i;
      }
      unsigned long a = 1;
      while ((a * j) % p != 1) ++a;
      const long b = static_cast<long>((a * j - 1) / p);
      const ResElem base = comps[j].pow(-static_cast<long>(a)) * ResElem::gen(F).pow(-b);
      const Rep Wg = nt.mul(nt.rep_pow(unit, a, D + 1), nt.wrap(rep_lift(base, D), D, D + 1), D + 1);
      if (!(nt.residue(Wg, D + 1) == ResElem::gen(Fn))) {
        throw ConstructionError("internal: residue lift generator mismatch");
      }
      L->lift_pows.push_back(nt.rep_ground(G::one(d_->ctx), D + 1));
      for (std::size_t i = 1; i < p; ++i) L->lift_pows.push_back(nt.mul(L->lift_pows.back(), Wg, D + 1));
      return {nt, nt.root(D + 1)};
    }

    // Recenter X -> X + m lift(r).
    const Rep c = mul(m, rep_lift(*r, D), D);
    std::vector<Rep> g{f[n]};
    for (std::size_t i = n; i-- > 0;) {
      std::vector<Rep> ng(g.size() + 1, rep_zero(D));
      for (std::size_t k = 0; k < g.size(); ++k) {
        ng[k + 1] = add(ng[k + 1], g[k], D);
        ng[k] = add(ng[k], mul(c, g[k], D), D);
      }
      ng[0] = add(ng[0], f[i], D);
      g = std::move(ng);
    }
    f = std::move(g);
    shift = add(shift, c, D);
  }
  throw UnsupportedError("recentering did not reach a ramified or residue step");
}

}  // namespace vallab
