#include "leforge/groebner.hpp"

#include <algorithm>
#include <functional>

#include "leforge/error.hpp"

namespace leforge {

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind) {
    case OrderKind::Lex:
      for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    case OrderKind::GrevLex:
      return grevlex_cmp(a, b);
    case OrderKind::Block: {
      unsigned da = 0, db = 0;
      for (std::size_t i = 0; i < block; ++i) {
        da += a[i];
        db += b[i];
      }
      if (da != db) return da > db ? 1 : -1;
      for (std::size_t i = block; i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      unsigned ra = a.degree() - da, rb = b.degree() - db;
      if (ra != rb) return ra > rb ? 1 : -1;
      for (std::size_t i = kMaxVars; i-- > block;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      return 0;
    }
    case OrderKind::LocalDegRevLex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? 1 : -1;
      for (std::size_t i = kMaxVars; i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      return 0;
  }
  return 0;
}

namespace {

struct GPoly {
  std::vector<Term> t;  // descending in the engine order
  unsigned sugar = 0;
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  unsigned sugar;
};

class Engine {
 public:
  Engine(const TermOrder& ord, const Limits& lim, unsigned trunc) : ord_(ord), lim_(lim), trunc_(trunc) {}

  GPoly import(const Poly& p) const {
    GPoly g;
    for (const auto& t : p.terms())
      if (keep(t.mono)) g.t.push_back(t);
    sort_terms(g.t);
    g.sugar = 0;
    for (const auto& t : g.t) g.sugar = std::max(g.sugar, t.mono.degree());
    return g;
  }

  Poly export_poly(const VarRing& ring, const GPoly& g) const { return Poly::from_terms(ring, g.t); }

  std::vector<GPoly> run(std::vector<GPoly> input) {
    for (auto& f : input) {
      if (f.t.empty()) continue;
      GPoly h = reduce_full(std::move(f));
      if (h.t.empty()) continue;
      make_monic(h);
      update(std::move(h));
    }
    std::size_t steps = 0;
    while (!pairs_.empty()) {
      if (++steps > lim_.max_pairs) throw ResourceError("Groebner pair budget exceeded");
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (pair_less(pairs_[k], pairs_[best])) best = k;
      Pair p = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      if (trunc_ && p.lcm.degree() >= trunc_) continue;
      GPoly s = spoly(p);
      GPoly h = reduce_full(std::move(s));
      if (h.t.empty()) continue;
      make_monic(h);
      update(std::move(h));
    }
    return finish();
  }

  GPoly reduce_with(GPoly h, const std::vector<GPoly>& basis) const {
    std::vector<const GPoly*> refs;
    for (const auto& g : basis) refs.push_back(&g);
    return reduce_refs(std::move(h), refs);
  }

 private:
  bool keep(const Monomial& m) const { return trunc_ == 0 || m.degree() < trunc_; }

  void sort_terms(std::vector<Term>& t) const {
    std::sort(t.begin(), t.end(), [this](const Term& a, const Term& b) { return ord_.compare(a.mono, b.mono) > 0; });
  }

  /// Sugar first for degree orders; smallest lcm first for lex and block
  /// orders, where sugar selection lets coefficients explode.
  bool pair_less(const Pair& a, const Pair& b) const {
    int c = ord_.compare(a.lcm, b.lcm);
    bool normal = ord_.kind == OrderKind::Lex || ord_.kind == OrderKind::Block;
    if (normal && c != 0) return c < 0;
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  static void make_monic(GPoly& g) {
    Rational inv = 1 / g.t.front().coeff;
    if (inv == 1) return;
    for (auto& t : g.t) t.coeff *= inv;
  }

  /// h[from..] - c * m * g, keeping order.
  void sub_mul(std::vector<Term>& h, std::size_t from, const Rational& c, const Monomial& m,
               const GPoly& g, std::vector<Term>& out) const {
    out.clear();
    out.reserve(h.size() - from + g.t.size());
    std::size_t i = from, j = 0;
    auto gterm = [&](std::size_t k) { return g.t[k].mono * m; };
    // skip truncated multiples of g
    while (j < g.t.size() || i < h.size()) {
      if (j < g.t.size()) {
        Monomial gm = gterm(j);
        if (!keep(gm)) {
          ++j;
          continue;
        }
        if (gm.degree() > lim_.max_degree)
          throw ResourceError("degree cap " + std::to_string(lim_.max_degree) + " exceeded");
        int cmp = i < h.size() ? ord_.compare(h[i].mono, gm) : -1;
        if (cmp > 0) {
          out.push_back(std::move(h[i++]));
        } else if (cmp < 0) {
          out.push_back({gm, -c * g.t[j].coeff});
          ++j;
        } else {
          Rational s = h[i].coeff - c * g.t[j].coeff;
          if (s != 0) out.push_back({gm, std::move(s)});
          ++i;
          ++j;
        }
      } else {
        out.push_back(std::move(h[i++]));
      }
    }
  }

  const GPoly* find_divisor(const Monomial& m, const std::vector<const GPoly*>& basis) const {
    for (const GPoly* g : basis)
      if (g->t.front().mono.divides(m)) return g;
    return nullptr;
  }

  GPoly reduce_refs(GPoly h, const std::vector<const GPoly*>& basis) const {
    std::vector<Term> rem, buf;
    std::size_t pos = 0;
    while (pos < h.t.size()) {
      const Monomial& lm = h.t[pos].mono;
      const GPoly* g = find_divisor(lm, basis);
      if (!g) {
        rem.push_back(std::move(h.t[pos++]));
        continue;
      }
      Monomial q = lm / g->t.front().mono;
      Rational c = h.t[pos].coeff / g->t.front().coeff;
      h.sugar = std::max(h.sugar, g->sugar + q.degree());
      sub_mul(h.t, pos, c, q, *g, buf);
      h.t.swap(buf);
      pos = 0;
    }
    h.t = std::move(rem);
    return h;
  }

  GPoly reduce_full(GPoly h) const {
    std::vector<const GPoly*> refs;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) refs.push_back(&polys_[k]);
    return reduce_refs(std::move(h), refs);
  }

  GPoly spoly(const Pair& p) const {
    const GPoly& a = polys_[p.i];
    const GPoly& b = polys_[p.j];
    Monomial ma = p.lcm / a.t.front().mono;
    Monomial mb = p.lcm / b.t.front().mono;
    GPoly s;
    for (const auto& t : a.t) {
      Monomial m = t.mono * ma;
      if (keep(m)) s.t.push_back({m, t.coeff});
    }
    std::vector<Term> buf;
    sub_mul(s.t, 0, 1, mb, b, buf);
    s.t.swap(buf);
    s.sugar = p.sugar;
    return s;
  }

  unsigned pair_sugar(std::size_t i, std::size_t j, const Monomial& l) const {
    unsigned si = polys_[i].sugar + l.degree() - polys_[i].t.front().mono.degree();
    unsigned sj = polys_[j].sugar + l.degree() - polys_[j].t.front().mono.degree();
    return std::max(si, sj);
  }

  /// Gebauer-Moeller update.
  void update(GPoly h) {
    unsigned deg = 0;
    for (const auto& t : h.t) deg = std::max(deg, t.mono.degree());
    if (deg > lim_.max_degree) throw ResourceError("degree cap " + std::to_string(lim_.max_degree) + " exceeded");
    if (polys_.size() >= lim_.max_basis) throw ResourceError("basis size cap exceeded");
    const std::size_t hi = polys_.size();
    const Monomial lh = h.t.front().mono;
    polys_.push_back(std::move(h));
    active_.push_back(true);

    std::vector<std::size_t> c;
    for (std::size_t k = 0; k < hi; ++k)
      if (active_[k]) c.push_back(k);
    auto lcm_with = [&](std::size_t k) { return Monomial::lcm(lh, polys_[k].t.front().mono); };

    std::vector<std::size_t> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      std::size_t g1 = c[a];
      Monomial l1 = lcm_with(g1);
      bool keep_pair = Monomial::coprime(lh, polys_[g1].t.front().mono);
      if (!keep_pair) {
        keep_pair = true;
        for (std::size_t b = a + 1; b < c.size() && keep_pair; ++b)
          if (lcm_with(c[b]).divides(l1)) keep_pair = false;
        for (std::size_t g2 : d)
          if (keep_pair && lcm_with(g2).divides(l1)) keep_pair = false;
      }
      if (keep_pair) d.push_back(g1);
    }

    std::vector<Pair> kept;
    for (const auto& p : pairs_) {
      Monomial li = Monomial::lcm(polys_[p.i].t.front().mono, lh);
      Monomial lj = Monomial::lcm(polys_[p.j].t.front().mono, lh);
      bool drop = lh.divides(p.lcm) && li != p.lcm && lj != p.lcm;
      if (!drop) kept.push_back(p);
    }
    pairs_.swap(kept);
    for (std::size_t g : d) {
      if (Monomial::coprime(lh, polys_[g].t.front().mono)) continue;
      Monomial l = lcm_with(g);
      pairs_.push_back({g, hi, l, pair_sugar(g, hi, l)});
    }
    for (std::size_t k = 0; k < hi; ++k)
      if (active_[k] && lh.divides(polys_[k].t.front().mono)) active_[k] = false;
  }

  std::vector<GPoly> finish() {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) idx.push_back(k);
    std::vector<GPoly> out;
    for (std::size_t k : idx) {
      std::vector<const GPoly*> others;
      for (std::size_t o : idx)
        if (o != k) others.push_back(&polys_[o]);
      GPoly g = polys_[k];
      Term lead = g.t.front();
      GPoly tail;
      tail.t.assign(g.t.begin() + 1, g.t.end());
      tail = reduce_refs(std::move(tail), others);
      g.t.clear();
      g.t.push_back(lead);
      g.t.insert(g.t.end(), tail.t.begin(), tail.t.end());
      out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(),
              [this](const GPoly& a, const GPoly& b) { return ord_.compare(a.t.front().mono, b.t.front().mono) < 0; });
    return out;
  }

  const TermOrder& ord_;
  const Limits& lim_;
  unsigned trunc_;
  std::vector<GPoly> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

std::vector<Poly> run_engine(std::span<const Poly> gens, const TermOrder& ord, const Limits& lim, unsigned trunc) {
  if (gens.empty()) return {};
  const VarRing ring = gens[0].ring();
  Engine e(ord, lim, trunc);
  std::vector<GPoly> input;
  for (const auto& g : gens) {
    if (g.ring() != ring) throw PreconditionError("generators live in different rings");
    input.push_back(e.import(g));
  }
  std::vector<Poly> out;
  for (const auto& g : e.run(std::move(input))) out.push_back(e.export_poly(ring, g));
  return out;
}

}  // namespace

std::vector<Poly> groebner_basis(std::span<const Poly> gens, const TermOrder& ord, const Limits& lim) {
  if (ord.kind == OrderKind::LocalDegRevLex)
    throw PreconditionError("local order requires a truncation degree");
  return run_engine(gens, ord, lim, 0);
}

std::vector<Poly> truncated_local_basis(std::span<const Poly> gens, unsigned k, const Limits& lim) {
  if (k == 0) throw PreconditionError("truncation degree must be positive");
  return run_engine(gens, TermOrder::local(), lim, k);
}

Monomial leading_monomial(const Poly& p, const TermOrder& ord) {
  const auto& ts = p.terms();
  Monomial best = ts.front().mono;
  for (const auto& t : ts)
    if (ord.compare(t.mono, best) > 0) best = t.mono;
  return best;
}

Poly reduce(const Poly& p, std::span<const Poly> basis, const TermOrder& ord) {
  if (p.is_zero() || basis.empty()) return p;
  Limits lim;
  lim.max_degree = ~0u;
  Engine e(ord, lim, 0);
  std::vector<GPoly> bs;
  for (const auto& b : basis) bs.push_back(e.import(b));
  GPoly r = e.reduce_with(e.import(p), bs);
  return e.export_poly(p.ring(), r);
}

namespace {

bool divisible_by_any(const Monomial& m, std::span<const Monomial> leads) {
  for (const auto& l : leads)
    if (l.divides(m)) return true;
  return false;
}

template <typename Visit>
void walk_staircase(std::span<const Monomial> leads, std::size_t nvars, unsigned bound, Visit&& visit) {
  Monomial m;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == nvars) {
      visit(m);
      return;
    }
    for (Exponent e = 0;; ++e) {
      m.set(i, e);
      if (bound && m.degree() >= bound) break;
      if (divisible_by_any(m, leads)) break;
      rec(i + 1);
    }
    m.set(i, 0);
  };
  rec(0);
}

bool finite_staircase(std::span<const Monomial> leads, std::size_t nvars) {
  for (std::size_t i = 0; i < nvars; ++i) {
    bool pure = false;
    for (const auto& l : leads)
      if (l.degree() == l[i]) pure = true;
    if (!pure) return false;
  }
  return true;
}

}  // namespace

std::optional<std::size_t> count_standard_monomials(std::span<const Monomial> leads, std::size_t nvars,
                                                    unsigned degree_bound) {
  for (const auto& l : leads)
    if (l.is_one()) return 0;
  if (!degree_bound && !finite_staircase(leads, nvars)) return std::nullopt;
  std::size_t n = 0;
  walk_staircase(leads, nvars, degree_bound, [&](const Monomial&) { ++n; });
  return n;
}

std::vector<Monomial> standard_monomials(std::span<const Monomial> leads, std::size_t nvars) {
  for (const auto& l : leads)
    if (l.is_one()) return {};
  if (!finite_staircase(leads, nvars)) throw PreconditionError("ideal is not zero-dimensional");
  std::vector<Monomial> out;
  walk_staircase(leads, nvars, 0, [&](const Monomial& m) { out.push_back(m); });
  return out;
}

}  // namespace leforge
