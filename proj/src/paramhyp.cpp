#include "leforge/paramhyp.hpp"

#include <algorithm>
#include <numeric>

#include "leforge/error.hpp"

namespace leforge {

namespace {

/// base's names followed by k fresh names built from stem.
VarRing extend(const std::vector<std::string>& base, std::size_t k, const std::string& stem) {
  std::vector<std::string> names = base;
  for (std::size_t i = 0, idx = 0; i < k; ++idx) {
    std::string cand = stem + std::to_string(idx);
    if (std::find(names.begin(), names.end(), cand) != names.end()) continue;
    names.push_back(cand);
    ++i;
  }
  return VarRing(std::move(names));
}

Poly embed(const Poly& p, const VarRing& big, std::size_t offset) {
  std::vector<std::size_t> map(p.ring().size());
  std::iota(map.begin(), map.end(), offset);
  return rename_into(p, big, map);
}

std::vector<Poly> embed_all(const std::vector<Poly>& ps, const VarRing& big, std::size_t offset) {
  std::vector<Poly> out;
  for (const auto& p : ps) out.push_back(embed(p, big, offset));
  return out;
}

std::size_t count_roots(const Ideal& I, Context& ctx, const char* what) {
  if (I.is_unit(ctx.limits)) return 0;
  if (!colength_global(I, ctx.limits)) throw PreconditionError(std::string(what) + ": infinite fiber");
  return distinct_root_count(I, ctx);
}

std::size_t preimage_count(const Parameterization& pi, const Ideal& points, Context& ctx) {
  std::size_t total = 0;
  for (const auto& b : pi.branches()) total += count_roots(pullback(points, b), ctx, "preimage count");
  return total;
}

Poly divided_difference(const Poly& p, std::size_t y, std::size_t y2) {
  const VarRing& r = p.ring();
  Poly diff = p - substitute(p, y, Poly::variable(r, y2));
  if (diff.is_zero()) return diff;
  return exact_divide(diff, Poly::variable(r, y) - Poly::variable(r, y2));
}

std::size_t pick_doubled(const Parameterization& pi, std::size_t branch) {
  if (branch >= pi.branches().size()) throw PreconditionError("no such branch");
  auto dv = doubled_variable(pi.branches()[branch]);
  if (!dv) throw PreconditionError("divided differences: only corank-one shapes are supported");
  return *dv == kNoDouble ? pi.source_dim() - 1 : *dv;
}

/// Generic preimage count minus one along a curve or surface C.
std::int64_t generic_m(const Parameterization& pi, const Ideal& C, std::size_t dim, const CoordTuple& coords,
                       Context& ctx) {
  std::optional<std::int64_t> prev;
  for (int attempt = 0; attempt < 10; ++attempt) {
    long long h = 5LL * (attempt + 1);
    std::vector<Poly> slice;
    for (std::size_t i = 0; i < dim; ++i)
      slice.push_back(coords.forms()[i].to_poly(C.ring()) - Poly::constant(C.ring(), Rational(static_cast<long>(ctx.rng.nonzero(h)))));
    Ideal K = C.plus(slice);
    auto lc = colength_global(K, ctx.limits);
    if (!lc || *lc == 0) continue;
    auto points = static_cast<std::int64_t>(distinct_root_count(K, ctx));
    auto pre = static_cast<std::int64_t>(preimage_count(pi, K, ctx));
    if (pre % points != 0) continue;
    std::int64_t m = pre / points - 1;
    if (prev && *prev == m) return m;
    prev = m;
  }
  throw SamplingError("could not sample a consistent preimage count on a multiple-point component");
}

}  // namespace

Parameterization::Parameterization(VarRing source, VarRing target, std::vector<std::vector<Poly>> branches)
    : source_(std::move(source)), target_(std::move(target)), branches_(std::move(branches)) {
  if (branches_.empty()) throw PreconditionError("parameterization needs at least one branch");
  for (const auto& b : branches_) {
    if (b.size() != target_.size()) throw PreconditionError("branch has the wrong number of components");
    for (const auto& p : b)
      if (p.ring() != source_) throw PreconditionError("component is not over the source ring");
  }
}

bool Parameterization::has_parameter_shape() const {
  if (source_.size() < 1 || target_.size() < 1) return false;
  Poly t = Poly::variable(source_, 0);
  return std::all_of(branches_.begin(), branches_.end(), [&](const auto& b) { return b[0] == t; });
}

bool Parameterization::is_trivial_unfolding() const {
  if (!has_parameter_shape()) return false;
  for (const auto& b : branches_)
    for (std::size_t i = 1; i < b.size(); ++i)
      if (b[i].involves(0)) return false;
  return true;
}

Parameterization Parameterization::slice(const Rational& t0) const {
  if (!has_parameter_shape()) throw PreconditionError("slice: not an unfolding");
  std::vector<std::size_t> drop{0};
  std::vector<std::vector<Poly>> out;
  Poly value = Poly::constant(source_, t0);
  for (const auto& b : branches_) {
    std::vector<Poly> comps;
    for (std::size_t i = 1; i < b.size(); ++i) comps.push_back(restrict_to_zero(substitute(b[i], 0, value), drop));
    out.push_back(std::move(comps));
  }
  return Parameterization(source_.without(drop), target_.without(drop), std::move(out));
}

std::vector<std::vector<std::string>> Parameterization::describe() const {
  std::vector<std::vector<std::string>> out;
  for (const auto& b : branches_) {
    std::vector<std::string> s;
    for (const auto& p : b) s.push_back(p.to_string());
    out.push_back(std::move(s));
  }
  return out;
}

Poly image_equation(const Parameterization& pi, const Limits& lim) {
  const std::size_t s = pi.source_dim(), N = pi.target_dim();
  VarRing ext = extend(extend({}, s, "a").names(), N, "X");
  std::vector<std::size_t> drop(s);
  std::iota(drop.begin(), drop.end(), 0);
  std::vector<std::size_t> ident(N);
  std::iota(ident.begin(), ident.end(), 0);
  Poly f = Poly::constant(pi.target(), 1);
  std::vector<Poly> seen;
  for (const auto& b : pi.branches()) {
    std::vector<Poly> gens;
    for (std::size_t j = 0; j < N; ++j) gens.push_back(Poly::variable(ext, s + j) - embed(b[j], ext, 0));
    Ideal elim = eliminate(Ideal(ext, gens), drop, lim);
    auto gb = groebner_basis(elim, TermOrder::grevlex(), lim);
    if (gb.empty()) throw PreconditionError("image is not a hypersurface");
    if (gb.size() != 1) throw PreconditionError("image ideal is not principal");
    Poly g = primitive_part(rename_into(gb[0], pi.target(), ident));
    if (g.is_constant()) throw PreconditionError("image is not a hypersurface");
    if (std::find(seen.begin(), seen.end(), g) != seen.end()) continue;
    seen.push_back(g);
    f *= g;
  }
  return primitive_part(f);
}

std::size_t fiber_count(const Parameterization& pi, std::span<const Rational> p, Context& ctx) {
  if (p.size() != pi.target_dim()) throw PreconditionError("fiber_count: point has the wrong length");
  std::size_t total = 0;
  for (const auto& b : pi.branches()) {
    std::vector<Poly> gens;
    for (std::size_t j = 0; j < b.size(); ++j) gens.push_back(b[j] - Poly::constant(pi.source(), p[j]));
    total += count_roots(Ideal(pi.source(), gens), ctx, "fiber_count");
  }
  return total;
}

std::int64_t m_value(const Parameterization& pi, std::span<const Rational> p, Context& ctx) {
  std::size_t c = fiber_count(pi, p, ctx);
  if (c == 0) throw PreconditionError("m_value: point is not in the image");
  return static_cast<std::int64_t>(c) - 1;
}

std::int64_t m_origin(const Parameterization& pi, Context& ctx) {
  std::vector<Rational> zero(pi.target_dim(), Rational(0));
  return m_value(pi, zero, ctx);
}

bool generically_one_to_one(const Parameterization& pi, Context& ctx) {
  std::vector<Rational> u;
  for (std::size_t i = 0; i < pi.source_dim(); ++i) u.emplace_back(static_cast<long>(ctx.rng.nonzero(7)));
  std::vector<Rational> p;
  for (const auto& c : pi.branches()[0]) p.push_back(evaluate(c, u));
  return fiber_count(pi, p, ctx) == 1;
}

std::optional<std::size_t> doubled_variable(const std::vector<Poly>& branch) {
  if (branch.empty()) return std::nullopt;
  const VarRing& r = branch[0].ring();
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < r.size(); ++i) {
    Poly v = Poly::variable(r, i);
    if (std::find(branch.begin(), branch.end(), v) == branch.end()) free.push_back(i);
  }
  if (free.empty()) return kNoDouble;
  if (free.size() == 1) return free[0];
  return std::nullopt;
}

Ideal double_point_source_ideal(const Parameterization& pi, std::size_t branch) {
  std::size_t y = pick_doubled(pi, branch);
  const std::size_t s = pi.source_dim();
  std::vector<std::string> names = pi.source().names();
  names.push_back(pi.source().fresh_name(pi.source().name(y) + "_"));
  VarRing r2(std::move(names));
  std::vector<Poly> gens;
  for (const auto& c : pi.branches()[branch]) gens.push_back(divided_difference(embed(c, r2, 0), y, s));
  return Ideal(r2, gens);
}

Ideal triple_point_source_ideal(const Parameterization& pi, std::size_t branch) {
  std::size_t y = pick_doubled(pi, branch);
  const std::size_t s = pi.source_dim();
  VarRing r3 = extend(pi.source().names(), 2, pi.source().name(y) + "_");
  std::vector<Poly> gens;
  Poly step = Poly::variable(r3, s) - Poly::variable(r3, s + 1);
  for (const auto& c : pi.branches()[branch]) {
    Poly e = embed(c, r3, 0);
    Poly d1 = divided_difference(e, y, s);
    Poly d1b = divided_difference(e, y, s + 1);
    gens.push_back(d1);
    Poly num = d1 - d1b;
    if (!num.is_zero()) gens.push_back(exact_divide(num, step));
  }
  return Ideal(r3, gens);
}

std::vector<PairLocus> pair_loci(const Parameterization& pi, const Limits& lim) {
  std::vector<PairLocus> out;
  const std::size_t s = pi.source_dim();
  const auto& bs = pi.branches();
  VarRing twin = extend(extend({}, s, "a").names(), s, "b");
  for (std::size_t b = 0; b < bs.size(); ++b) {
    auto dv = doubled_variable(bs[b]);
    if (dv && *dv == kNoDouble) continue;  // an embedding has no self pairs
    if (dv) {
      Ideal dd = double_point_source_ideal(pi, b);
      const VarRing& r2 = dd.ring();
      Ideal sat = saturate(dd, Poly::variable(r2, *dv) - Poly::variable(r2, s), lim);
      if (sat.is_unit(lim)) continue;
      out.push_back({sat, embed_all(bs[b], r2, 0), true});
    } else {
      std::vector<Poly> eq, diag;
      for (std::size_t j = 0; j < bs[b].size(); ++j) eq.push_back(embed(bs[b][j], twin, 0) - embed(bs[b][j], twin, s));
      for (std::size_t i = 0; i < s; ++i) diag.push_back(Poly::variable(twin, i) - Poly::variable(twin, s + i));
      Ideal sat = saturate(Ideal(twin, eq), Ideal(twin, diag), lim);
      if (sat.is_unit(lim)) continue;
      out.push_back({sat, embed_all(bs[b], twin, 0), true});
    }
  }
  for (std::size_t a = 0; a < bs.size(); ++a)
    for (std::size_t b = a + 1; b < bs.size(); ++b) {
      std::vector<Poly> eq;
      for (std::size_t j = 0; j < bs[a].size(); ++j) eq.push_back(embed(bs[a][j], twin, 0) - embed(bs[b][j], twin, s));
      Ideal I(twin, eq);
      if (I.is_unit(lim)) continue;
      out.push_back({I, embed_all(bs[a], twin, 0), false});
    }
  return out;
}

Ideal image_of(const PairLocus& pl, const VarRing& target, const Limits& lim) {
  const VarRing& r = pl.ideal.ring();
  const std::size_t p = r.size(), N = target.size();
  VarRing ext = extend(r.names(), N, "X");
  std::vector<Poly> gens = embed_all(pl.ideal.generators(), ext, 0);
  for (std::size_t j = 0; j < N; ++j) gens.push_back(Poly::variable(ext, p + j) - embed(pl.image[j], ext, 0));
  std::vector<std::size_t> drop(p);
  std::iota(drop.begin(), drop.end(), 0);
  Ideal elim = eliminate(Ideal(ext, gens), drop, lim);
  std::vector<std::size_t> ident(N);
  std::iota(ident.begin(), ident.end(), 0);
  return rename_into(elim, target, ident);
}

Ideal pullback(const Ideal& k, const std::vector<Poly>& branch) {
  std::vector<Poly> gens;
  for (const auto& g : k.generators()) gens.push_back(compose(g, branch));
  return Ideal(branch.at(0).ring(), gens);
}

NdotMultiplicities ndot_multiplicities(const Parameterization& pi, const CoordTuple& coords, Context& ctx) {
  if (coords.ring() != pi.target()) throw PreconditionError("ndot: coordinates are not on the target");
  NdotMultiplicities res;
  if (pi.target_dim() < 2 || pi.target_dim() > 4) throw PreconditionError("ndot: target dimension out of scope");
  res.n = pi.target_dim() - 1;
  res.m_origin = m_origin(pi, ctx);
  if (res.n == 1) {
    res.top = res.m_origin;
    res.lambda[0] = res.m_origin;
    return res;
  }
  const Limits& lim = ctx.limits;
  std::vector<Ideal> images;
  for (const auto& pl : pair_loci(pi, lim)) {
    Ideal im = image_of(pl, pi.target(), lim);
    if (!im.is_unit(lim)) images.push_back(std::move(im));
  }
  const std::size_t want = res.n - 1;
  std::vector<Poly> cut;
  for (std::size_t i = 0; i < want; ++i) cut.push_back(coords.forms()[i].to_poly(pi.target()));
  for (std::size_t i = 0; i < images.size(); ++i) {
    Ideal c = images[i];
    for (std::size_t j = 0; j < i && !c.is_unit(lim); ++j) c = saturate(c, images[j], lim);
    if (c.is_unit(lim)) continue;
    int d = local_dim_origin(c, ctx);
    if (d < 0 || d < static_cast<int>(want)) continue;
    if (d > static_cast<int>(want)) throw PreconditionError("ndot: multiple-point set has a component of dimension " +
                                                            std::to_string(d));
    auto lc = local_colength_origin(c.plus(cut), lim).value;
    if (!lc) throw PreconditionError("ndot: slicing forms are not transverse to the multiple-point set");
    DComponent comp{c, generic_m(pi, c, want, coords, ctx), static_cast<std::int64_t>(*lc)};
    res.top += comp.m * comp.cut;
    res.components.push_back(std::move(comp));
  }
  res.lambda[res.n - 1] = res.top;
  if (res.n == 2) res.lambda[0] = res.top - res.m_origin;
  return res;
}

std::int64_t ndot_polar_from_unfolding(const Parameterization& pi, const CoordTuple& coords, const Limits& lim) {
  if (!pi.has_parameter_shape()) throw PreconditionError("not an unfolding: first component must be the parameter");
  if (coords.ring() != pi.target() || coords.forms()[0].to_poly(pi.target()) != Poly::variable(pi.target(), 0))
    throw PreconditionError("first coordinate must be the parameter");
  // <d/dz_1, ..., d/dz_n> does not depend on the basis z when no z_i involves t
  bool t_free = true;
  for (std::size_t i = 1; i < coords.forms().size(); ++i) t_free &= coords.forms()[i].coeffs[0] == 0;
  CoordTuple frame = t_free ? CoordTuple::standard(pi.target()) : coords;
  Poly f = image_equation(pi, lim);
  if (!is_ipa_deformation(f, frame, lim).ipa) throw PreconditionError("not an IPA-deformation");
  return polar_number(f, frame, 1, lim);
}

std::int64_t multiple_point_total(const Parameterization& pi, Context& ctx) {
  const Limits& lim = ctx.limits;
  std::optional<Ideal> u;
  for (const auto& pl : pair_loci(pi, lim)) {
    Ideal im = image_of(pl, pi.target(), lim);
    if (im.is_unit(lim)) continue;
    u = u ? intersect(*u, im, lim) : im;
  }
  if (!u) return 0;
  if (!colength_global(*u, lim)) throw PreconditionError("multiple-point set is not finite");
  auto points = static_cast<std::int64_t>(distinct_root_count(*u, ctx));
  return static_cast<std::int64_t>(preimage_count(pi, *u, ctx)) - points;
}

}  // namespace leforge
