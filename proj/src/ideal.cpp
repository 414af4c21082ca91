#include "leforge/ideal.hpp"

#include <algorithm>
#include <unordered_map>

#include "leforge/error.hpp"

namespace leforge {

// ---------------------------------------------------------------- Ideal

Ideal::Ideal(VarRing ring, std::vector<Poly> gens) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : gens) {
    if (g.ring() != ring_) throw PreconditionError("generator lives in a different ring");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(const VarRing& ring) { return Ideal(ring, {Poly::constant(ring, 1)}); }

const std::vector<Poly>& Ideal::basis(const TermOrder& ord, const Limits& lim) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->bases.find(ord);
  if (it != cache_->bases.end()) return *it->second;
  auto b = std::make_shared<const std::vector<Poly>>(leforge::groebner_basis(gens_, ord, lim));
  cache_->bases.emplace(ord, b);
  return *b;
}

Ideal Ideal::operator+(const Ideal& o) const {
  if (o.ring_ != ring_) throw PreconditionError("ideals live in different rings");
  return plus(o.gens_);
}

Ideal Ideal::plus(std::span<const Poly> extra) const {
  std::vector<Poly> g = gens_;
  g.insert(g.end(), extra.begin(), extra.end());
  return Ideal(ring_, std::move(g));
}

bool Ideal::is_unit(const Limits& lim) const {
  const auto& b = basis(TermOrder::grevlex(), lim);
  return !b.empty() && b.front().is_constant();
}

bool Ideal::contains(const Poly& p, const Limits& lim) const {
  return normal_form(p, *this, TermOrder::grevlex(), lim).is_zero();
}

bool Ideal::contains(const Ideal& o, const Limits& lim) const {
  return std::all_of(o.gens_.begin(), o.gens_.end(), [&](const Poly& g) { return contains(g, lim); });
}

bool Ideal::equals(const Ideal& o, const Limits& lim) const {
  if (o.ring_ != ring_) return false;
  return basis(TermOrder::grevlex(), lim) == o.basis(TermOrder::grevlex(), lim);
}

std::string Ideal::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
  return s + ">";
}

Poly normal_form(const Poly& p, const Ideal& I, const TermOrder& ord, const Limits& lim) {
  return reduce(p, I.basis(ord, lim), ord);
}

std::vector<Poly> groebner_basis(const Ideal& I, const TermOrder& ord, const Limits& lim) { return I.basis(ord, lim); }

// ---------------------------------------------------------------- ring plumbing

namespace {

/// Ring with `extra` fresh variables in front; old variable i becomes i + extra.
struct Extended {
  VarRing ring;
  std::vector<std::size_t> shift;
};

Extended prepend(const VarRing& ring, std::size_t extra) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < extra; ++k) names.push_back(ring.fresh_name("aux" + std::to_string(k)));
  for (const auto& n : ring.names()) names.push_back(n);
  Extended e{VarRing(std::move(names)), {}};
  for (std::size_t i = 0; i < ring.size(); ++i) e.shift.push_back(i + extra);
  return e;
}

/// Eliminate the first `block` variables of `ring_ext` and map back to `base`.
Ideal eliminate_front(const VarRing& ext, std::vector<Poly> gens, std::size_t block, const VarRing& base,
                      const Limits& lim) {
  auto gb = leforge::groebner_basis(gens, TermOrder::elimination(block), lim);
  std::vector<std::size_t> back(ext.size(), 0);
  for (std::size_t i = block; i < ext.size(); ++i) back[i] = i - block;
  std::vector<Poly> kept;
  for (const auto& g : gb) {
    bool free = true;
    for (std::size_t i = 0; i < block && free; ++i) free = !g.involves(i);
    if (free) kept.push_back(rename_into(g, base, back));
  }
  return Ideal(base, std::move(kept));
}

}  // namespace

Ideal rename_into(const Ideal& I, const VarRing& target, std::span<const std::size_t> index_map) {
  std::vector<Poly> g;
  for (const auto& p : I.generators()) g.push_back(rename_into(p, target, index_map));
  return Ideal(target, std::move(g));
}

Ideal restrict_to_zero(const Ideal& I, std::span<const std::size_t> vars) {
  VarRing sub = I.ring().without(vars);
  std::vector<Poly> g;
  for (const auto& p : I.generators()) g.push_back(restrict_to_zero(p, vars));
  return Ideal(sub, std::move(g));
}

Ideal maximal_ideal(const VarRing& ring) {
  std::vector<Poly> g;
  for (std::size_t i = 0; i < ring.size(); ++i) g.push_back(Poly::variable(ring, i));
  return Ideal(ring, std::move(g));
}

// ---------------------------------------------------------------- ideal operations

Ideal intersect(const Ideal& I, const Ideal& J, const Limits& lim) {
  if (I.is_zero() || J.is_zero()) return Ideal(I.ring());
  if (I.is_unit(lim)) return J;
  if (J.is_unit(lim)) return I;
  auto ext = prepend(I.ring(), 1);
  Poly w = Poly::variable(ext.ring, 0);
  Poly one_minus_w = Poly::constant(ext.ring, 1) - w;
  std::vector<Poly> gens;
  for (const auto& g : I.generators()) gens.push_back(w * rename_into(g, ext.ring, ext.shift));
  for (const auto& g : J.generators()) gens.push_back(one_minus_w * rename_into(g, ext.ring, ext.shift));
  return eliminate_front(ext.ring, std::move(gens), 1, I.ring(), lim);
}

namespace {

Ideal quotient_by(const Ideal& I, const Poly& g, const Limits& lim) {
  if (g.is_constant()) return I;
  Ideal inter = intersect(I, Ideal(I.ring(), {g}), lim);
  std::vector<Poly> q;
  for (const auto& h : inter.basis(TermOrder::grevlex(), lim)) q.push_back(exact_divide(h, g));
  return Ideal(I.ring(), std::move(q));
}

Ideal intersect_all(const std::vector<Ideal>& parts, const Limits& lim) {
  Ideal acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = intersect(acc, parts[i], lim);
  return acc;
}

}  // namespace

Ideal ideal_quotient(const Ideal& I, const Ideal& J, const Limits& lim) {
  if (J.is_zero()) return Ideal::unit(I.ring());
  std::vector<Ideal> parts;
  for (const auto& g : J.generators()) parts.push_back(quotient_by(I, g, lim));
  return intersect_all(parts, lim);
}

Ideal saturate(const Ideal& I, const Poly& g, const Limits& lim) {
  if (g.is_zero()) return Ideal::unit(I.ring());
  if (g.is_constant() || I.is_zero()) return I;
  if (I.is_unit(lim)) return I;
  auto ext = prepend(I.ring(), 1);
  std::vector<Poly> gens;
  for (const auto& h : I.generators()) gens.push_back(rename_into(h, ext.ring, ext.shift));
  gens.push_back(Poly::constant(ext.ring, 1) - Poly::variable(ext.ring, 0) * rename_into(g, ext.ring, ext.shift));
  return eliminate_front(ext.ring, std::move(gens), 1, I.ring(), lim);
}

Ideal saturate(const Ideal& I, const Ideal& J, const Limits& lim) {
  if (J.is_zero()) return Ideal::unit(I.ring());
  if (J.is_unit(lim)) return I;
  std::vector<Ideal> parts;
  for (const auto& g : J.basis(TermOrder::grevlex(), lim)) parts.push_back(saturate(I, g, lim));
  return intersect_all(parts, lim);
}

Ideal saturate_generic(const Ideal& I, const Ideal& J, Rng& rng, const Limits& lim) {
  if (J.is_zero()) return Ideal::unit(I.ring());
  if (J.is_unit(lim)) return I;
  Poly g(I.ring());
  for (const auto& b : J.basis(TermOrder::grevlex(), lim)) g += b * Rational(static_cast<long>(rng.nonzero(9)));
  return saturate(I, g, lim);
}

Ideal saturate_by_quotients(const Ideal& I, const Ideal& J, const Limits& lim) {
  Ideal cur = I;
  for (;;) {
    Ideal next = ideal_quotient(cur, J, lim);
    if (next.equals(cur, lim)) return cur;
    cur = next;
  }
}

Ideal eliminate(const Ideal& I, std::span<const std::size_t> drop, const Limits& lim) {
  const VarRing& ring = I.ring();
  VarRing sub = ring.without(drop);
  std::vector<std::string> names;
  std::vector<std::size_t> map(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (std::find(drop.begin(), drop.end(), i) != drop.end()) {
      map[i] = names.size();
      names.push_back(ring.name(i));
    }
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) {
      map[i] = names.size();
      names.push_back(ring.name(i));
    }
  VarRing ordered(std::move(names));
  std::vector<Poly> gens;
  for (const auto& g : I.generators()) gens.push_back(rename_into(g, ordered, map));
  return eliminate_front(ordered, std::move(gens), drop.size(), sub, lim);
}

// ---------------------------------------------------------------- colengths

namespace {

std::vector<Monomial> leads_of(const std::vector<Poly>& basis, const TermOrder& ord) {
  std::vector<Monomial> out;
  for (const auto& p : basis) out.push_back(leading_monomial(p, ord));
  return out;
}

}  // namespace

Colength colength_global(const Ideal& I, const Limits& lim) {
  const auto& b = I.basis(TermOrder::grevlex(), lim);
  return count_standard_monomials(leads_of(b, TermOrder::grevlex()), I.ring().size());
}

std::size_t truncated_colength(const Ideal& I, unsigned k, const Limits& lim) {
  auto b = truncated_local_basis(I.generators(), k, lim);
  return *count_standard_monomials(leads_of(b, TermOrder::local()), I.ring().size(), k);
}

bool origin_in_variety(const Ideal& I) {
  return std::all_of(I.generators().begin(), I.generators().end(),
                     [](const Poly& g) { return g.constant_term() == 0; });
}

bool origin_isolated(const Ideal& I, const Limits& lim) {
  if (!origin_in_variety(I)) return true;
  for (std::size_t i = 0; i < I.ring().size(); ++i) {
    Ideal s = saturate(I, Poly::variable(I.ring(), i), lim);
    if (origin_in_variety(s)) return false;
  }
  return true;
}

LocalColength local_colength_origin(const Ideal& I, const Limits& lim) {
  if (!origin_in_variety(I)) return {0, 1};
  if (I.ring().size() == 0) return {1, 1};
  if (!origin_isolated(I, lim)) return {std::nullopt, 0};
  std::vector<std::size_t> c{0};  // c[k] = colength(I + m^k), c[0] unused
  for (unsigned k = 1; k <= lim.k_max; ++k) {
    c.push_back(truncated_colength(I, k, lim));
    if (k >= 3 && c[k - 2] == c[k - 1] && c[k - 1] == c[k]) return {c[k], k - 2};
  }
  throw StabilizationError("local colength did not stabilize below k_max = " + std::to_string(lim.k_max));
}

int local_dim_origin(const Ideal& I, Context& ctx) {
  if (!origin_in_variety(I)) return -1;
  const std::size_t n = I.ring().size();
  std::vector<Poly> extra;
  for (std::size_t k = 0; k <= n; ++k) {
    if (origin_isolated(I.plus(extra), ctx.limits)) return static_cast<int>(k);
    extra.push_back(ctx.rng.linear_form(n, 97).to_poly(I.ring()));
  }
  return static_cast<int>(n);
}

// ---------------------------------------------------------------- root counting

namespace {

using UPoly = std::vector<Rational>;  // coefficient of w^i at index i

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly umod(UPoly a, const UPoly& b) {
  trim(a);
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = umod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::size_t squarefree_degree(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  UPoly g = ugcd(p, d);
  return (p.size() - 1) - (g.empty() ? 0 : g.size() - 1);
}

/// Minimal polynomial of multiplication by `ell` on Q[x]/I.
UPoly minimal_polynomial(const Ideal& I, const Poly& ell, const Limits& lim) {
  const auto& gb = I.basis(TermOrder::grevlex(), lim);
  auto stdm = standard_monomials(leads_of(gb, TermOrder::grevlex()), I.ring().size());
  std::unordered_map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < stdm.size(); ++i) index.emplace(stdm[i], i);
  const std::size_t n = stdm.size();
  auto coords = [&](const Poly& p) {
    std::vector<Rational> v(n);
    for (const auto& t : p.terms()) v[index.at(t.mono)] = t.coeff;
    return v;
  };
  struct Row {
    std::vector<Rational> v;
    std::vector<Rational> combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  Poly power = reduce(Poly::constant(I.ring(), 1), gb, TermOrder::grevlex());
  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<Rational> v = coords(power);
    std::vector<Rational> combo(j + 1);
    combo[j] = 1;
    for (const auto& r : rows) {
      if (v[r.pivot] == 0) continue;
      Rational f = v[r.pivot] / r.v[r.pivot];
      for (std::size_t i = 0; i < n; ++i) v[i] -= f * r.v[i];
      for (std::size_t i = 0; i < r.combo.size(); ++i) combo[i] -= f * r.combo[i];
    }
    auto piv = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (piv == v.end()) return combo;
    auto at = static_cast<std::size_t>(piv - v.begin());
    rows.push_back({std::move(v), std::move(combo), at});
    power = reduce(power * ell, gb, TermOrder::grevlex());
  }
  throw Error("minimal polynomial search overran the quotient dimension");
}

}  // namespace

std::size_t distinct_root_count(const Ideal& I, Context& ctx) {
  Colength c = colength_global(I, ctx.limits);
  if (!c) throw PreconditionError("distinct_root_count: ideal is not zero-dimensional");
  if (*c <= 1) return *c;
  const std::size_t n = I.ring().size();
  for (int attempt = 0; attempt < 8; ++attempt) {
    long long h = 10LL * (attempt + 1) * (attempt + 1);
    std::size_t a = squarefree_degree(minimal_polynomial(I, ctx.rng.linear_form(n, h).to_poly(I.ring()), ctx.limits));
    std::size_t b = squarefree_degree(minimal_polynomial(I, ctx.rng.linear_form(n, h).to_poly(I.ring()), ctx.limits));
    if (a == b) return a;
  }
  throw SamplingError("distinct_root_count: random linear forms kept disagreeing");
}

}  // namespace leforge
