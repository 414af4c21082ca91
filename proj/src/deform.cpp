#include "leforge/deform.hpp"

#include <algorithm>
#include <numeric>

#include "leforge/error.hpp"

namespace leforge {

namespace {

Poly embed_front(const Poly& p, const VarRing& big) {
  std::vector<std::size_t> map(p.ring().size());
  std::iota(map.begin(), map.end(), 0);
  return rename_into(p, big, map);
}

std::string label(const std::string& what, const Rational& t0) { return what + " t0=" + to_string(t0); }

void absorb(Report& into, const Report& from, const std::string& prefix) {
  for (auto v : from.verdicts) {
    v.name = prefix + v.name;
    into.verdicts.push_back(std::move(v));
  }
  for (const auto& [k, v] : from.values) into.values[prefix + k] = v;
  for (const auto& n : from.notes) into.notes.push_back(prefix + n);
}

void note_once(Report& r, const std::string& n) {
  if (std::find(r.notes.begin(), r.notes.end(), n) == r.notes.end()) r.notes.push_back(n);
}

std::int64_t finite_local(const Ideal& I, const Limits& lim, const std::string& what) {
  auto lc = local_colength_origin(I, lim).value;
  if (!lc) throw PreconditionError(what + " is not finite at the origin");
  return static_cast<std::int64_t>(*lc);
}

std::int64_t finite_global(const Ideal& I, const Limits& lim, const std::string& what) {
  auto c = colength_global(I, lim);
  if (!c) throw PreconditionError(what + " is not zero-dimensional");
  return static_cast<std::int64_t>(*c);
}

Poly det(std::vector<std::vector<Poly>> m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  const VarRing& r = m[0][0].ring();
  Poly out(r);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][c] * det(std::move(minor));
    out = (c % 2 == 0) ? out + term : out - term;
  }
  return out;
}

std::vector<Poly> gradient(const Poly& g) {
  std::vector<Poly> out;
  for (std::size_t j = 0; j < g.ring().size(); ++j) out.push_back(diff(g, j));
  return out;
}

std::vector<Poly> constant_row(const LinearForm& f, const VarRing& r) {
  std::vector<Poly> out;
  for (const auto& c : f.coeffs) out.push_back(Poly::constant(r, c));
  return out;
}

/// All 2x2 minors of the Jacobian matrix of gens.
std::vector<Poly> jacobian_minors2(const std::vector<Poly>& gens) {
  std::vector<Poly> out;
  if (gens.empty()) return out;
  const std::size_t n = gens[0].ring().size();
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          Poly m = diff(gens[a], i) * diff(gens[b], j) - diff(gens[a], j) * diff(gens[b], i);
          if (!m.is_zero()) out.push_back(std::move(m));
        }
  return out;
}

/// IPA-tuple condition up to one past the dimension of the critical locus.
void require_ipa_tuple(const Poly& f, const CoordTuple& coords, Context& ctx) {
  PolarData pd(f, coords, ctx.limits);
  int d = local_dim_origin(pd.sigma(), ctx);
  auto k = static_cast<std::size_t>(std::clamp(d + 1, 1, static_cast<int>(f.ring().size())));
  if (!is_ipa_tuple(f, coords, k, ctx.limits)) throw PreconditionError("(t, z) is not an IPA-tuple");
}

void require_curve_unfolding(const Parameterization& pi) {
  if (!pi.has_parameter_shape() || pi.target_dim() != 3)
    throw PreconditionError("needs an unfolding (t, x, y) of a plane-curve parameterization");
}

/// On-fiber sums of the Le numbers of f_t0 over V(z_0..z_{i-1}), i = 0..top.
std::vector<std::int64_t> slice_le_aggregates(const Poly& ft, const CoordTuple& coords, int top, const Limits& lim) {
  PolarData pd(ft, coords, lim);
  const VarRing& r = pd.g().ring();
  std::vector<std::int64_t> out;
  for (int ii = 0; ii <= top && ii < static_cast<int>(r.size()); ++ii) {
    auto i = static_cast<std::size_t>(ii);
    std::vector<Poly> cut;
    for (std::size_t j = 0; j < i; ++j) cut.push_back(Poly::variable(r, j));
    Ideal upper = pd.gamma(i + 1).plus(cut).plus(std::vector<Poly>{pd.partial(i)});
    Ideal lower = pd.gamma(i).plus(cut);
    std::int64_t a = finite_global(part_on(upper, pd.g(), lim), lim, "slice Le cycle " + std::to_string(i));
    std::int64_t b = finite_global(part_on(lower, pd.g(), lim), lim, "slice polar cycle " + std::to_string(i));
    out.push_back(a - b);
  }
  return out;
}

struct Eq2Slice {
  std::int64_t sum_mu = 0, sum_m = 0;
};

Eq2Slice eq2_slice(const Parameterization& pi, const Rational& t0, Context& ctx) {
  Parameterization pt = pi.slice(t0);
  if (!is_nodal(pt, ctx)) throw PreconditionError("slice at t0=" + to_string(t0) + " is not nodal");
  Poly ft = image_equation(pt, ctx.limits);
  Eq2Slice s;
  s.sum_mu = finite_global(part_on(jacobian_ideal(ft), ft, ctx.limits), ctx.limits, "critical locus on the slice fiber");
  s.sum_m = nodal_multiple_total(pt, ctx);
  return s;
}

/// Off-diagonal triple points of a one-branch corank-one surface map, counted in the target.
std::int64_t slice_triple_points(const Parameterization& pt, Context& ctx, std::vector<std::string>& notes) {
  const Limits& lim = ctx.limits;
  Ideal tri = triple_point_source_ideal(pt);
  const VarRing& r3 = tri.ring();
  const std::size_t s = pt.source_dim();
  std::size_t y = *doubled_variable(pt.branches()[0]);
  Ideal sat = tri;
  Poly yv = Poly::variable(r3, y), y1 = Poly::variable(r3, s), y2 = Poly::variable(r3, s + 1);
  for (const Poly& d : {yv - y1, yv - y2, y1 - y2}) sat = saturate(sat, d, lim);
  if (sat.is_unit(lim)) return 0;
  std::vector<Poly> image;
  for (const auto& c : pt.branches()[0]) image.push_back(embed_front(c, r3));
  Ideal K = image_of(PairLocus{sat, image, true}, pt.target(), lim);
  if (K.is_unit(lim)) return 0;
  finite_global(K, lim, "triple-point set of the slice");
  auto points = static_cast<std::int64_t>(distinct_root_count(K, ctx));
  auto pre = static_cast<std::int64_t>(distinct_root_count(pullback(K, pt.branches()[0]), ctx));
  if (pre != 3 * points) notes.push_back("a triple point of the slice has more than three preimages");
  return points;
}

}  // namespace

std::vector<Rational> default_slice_params() { return {Rational(1, 4), Rational(1, 9), Rational(1, 25)}; }

ShapeCheck check_unfolding_shape(const Parameterization& pi, Context& ctx) {
  if (!pi.has_parameter_shape()) return {false, "first component is not the first source variable"};
  try {
    if (!generically_one_to_one(pi.slice(0), ctx)) return {false, "the map at t = 0 is not generically one-to-one"};
  } catch (const PreconditionError& e) {
    return {false, std::string("the map at t = 0: ") + e.what()};
  }
  return {true, {}};
}

SliceCoords split_parameter(const CoordTuple& coords) {
  const VarRing& r = coords.ring();
  const auto& first = coords.forms().at(0).coeffs;
  std::optional<std::size_t> t;
  for (std::size_t j = 0; j < first.size(); ++j) {
    if (first[j] == 0) continue;
    if (t || first[j] != 1) throw PreconditionError("first coordinate must be a single variable (the parameter)");
    t = j;
  }
  if (!t) throw PreconditionError("first coordinate is zero");
  std::vector<std::size_t> drop{*t};
  std::vector<LinearForm> forms;
  for (std::size_t i = 1; i < coords.forms().size(); ++i) {
    const auto& c = coords.forms()[i].coeffs;
    if (c[*t] != 0) throw PreconditionError("coordinate " + coords.describe()[i] + " involves the parameter");
    LinearForm lf;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (j != *t) lf.coeffs.push_back(c[j]);
    forms.push_back(std::move(lf));
  }
  return {*t, coords, CoordTuple(r.without(drop), std::move(forms))};
}

Poly fiber_at(const Poly& f, std::size_t t, const Rational& t0) {
  std::vector<std::size_t> drop{t};
  return restrict_to_zero(substitute(f, t, Poly::constant(f.ring(), t0)), drop);
}

Ideal part_on(const Ideal& I, const Poly& f, const Limits& lim) {
  Ideal off = saturate(I, f, lim);
  if (off.is_unit(lim)) return I;
  return saturate(I, off, lim);
}

bool is_nodal(const Parameterization& pi, Context& ctx) {
  // immersion first: a cusp has no off-diagonal pairs at all
  for (const auto& b : pi.branches()) {
    std::vector<Poly> rank;
    if (pi.source_dim() == 1) {
      for (const auto& c : b) rank.push_back(diff(c, 0));
    } else if (pi.source_dim() == 2) {
      rank = jacobian_minors2(b);
    } else {
      throw PreconditionError("node test needs a source of dimension one or two");
    }
    if (!Ideal(pi.source(), rank).is_unit(ctx.limits)) return false;
  }
  std::int64_t twice = 0;
  for (const auto& pl : pair_loci(pi, ctx.limits)) {
    auto c = colength_global(pl.ideal, ctx.limits);
    if (!c) return false;
    auto d = distinct_root_count(pl.ideal, ctx);
    if (d != *c) return false;
    twice += static_cast<std::int64_t>(pl.ordered_self ? d : 2 * d);
  }
  if (twice % 2 != 0) return false;
  return multiple_point_total(pi, ctx) == twice / 2;
}

std::int64_t nodal_multiple_total(const Parameterization& pi, Context& ctx) {
  if (!is_nodal(pi, ctx)) throw PreconditionError("multiple points are not all nodes");
  std::int64_t twice = 0;
  for (const auto& pl : pair_loci(pi, ctx.limits)) {
    std::int64_t c = finite_global(pl.ideal, ctx.limits, "double-point pair ideal");
    twice += pl.ordered_self ? c : 2 * c;
  }
  return twice / 2;
}

Report verify_milnor_formula(const Parameterization& pi, Context& ctx, const std::vector<Rational>& params) {
  require_curve_unfolding(pi);
  const Limits& lim = ctx.limits;
  Report rep{"verify-milnor", {}, {}, {}};
  Parameterization p0 = pi.slice(0);
  std::int64_t mu = milnor_number(image_equation(p0, lim), lim);
  std::int64_t r = m_origin(p0, ctx) + 1;
  if (mu > 0 && is_nodal(p0, ctx)) throw PreconditionError("already-stable input: the map at t = 0 has only nodes");
  std::int64_t polar = ndot_polar_from_unfolding(pi, CoordTuple::standard(pi.target()), lim);
  std::int64_t delta = polar + r - 1;
  rep.values = {{"mu", mu}, {"r", r}, {"polar", polar}, {"delta", delta}};
  rep.verdicts.push_back(Verdict::check("milnor formula", mu, 2 * delta - r + 1, "mu(f0)",
                                        "2*" + std::to_string(delta) + " - " + std::to_string(r) + " + 1"));
  const Rational& t0 = params.at(0);
  Parameterization pt = pi.slice(t0);
  if (!is_nodal(pt, ctx)) throw PreconditionError("non-nodal slice at t0=" + to_string(t0));
  std::int64_t nodes = nodal_multiple_total(pt, ctx);
  rep.values["nodes"] = nodes;
  rep.verdicts.push_back(Verdict::check(label("delta vs nodes", t0), delta, nodes, "polar + r - 1", "nodes of slice"));
  rep.notes.push_back("delta read as polar number + r - 1");
  return rep;
}

Report verify_eq2_curve(const Parameterization& pi, const Rational& t0, Context& ctx) {
  require_curve_unfolding(pi);
  const Limits& lim = ctx.limits;
  Parameterization p0 = pi.slice(0);
  std::int64_t mu = milnor_number(image_equation(p0, lim), lim);
  std::int64_t m0 = m_origin(p0, ctx);
  Eq2Slice s = eq2_slice(pi, t0, ctx);
  Report rep{"verify-eq2", {}, {{"mu", mu}, {"m0", m0}, {"sum_mu", s.sum_mu}, {"sum_m", s.sum_m}}, {}};
  rep.verdicts.push_back(Verdict::check(label("eq2", t0), mu, -m0 + s.sum_mu + s.sum_m, "mu(f0)",
                                        "-" + std::to_string(m0) + " + " + std::to_string(s.sum_mu) + " + " +
                                            std::to_string(s.sum_m)));
  return rep;
}

Report verify_eq2_windows(const Parameterization& pi, Context& ctx, const std::vector<Rational>& params) {
  require_curve_unfolding(pi);
  const Limits& lim = ctx.limits;
  Parameterization p0 = pi.slice(0);
  std::int64_t mu = milnor_number(image_equation(p0, lim), lim);
  std::int64_t m0 = m_origin(p0, ctx);
  Report rep{"verify-eq2", {}, {{"mu", mu}, {"m0", m0}}, {}};
  std::vector<std::pair<Rational, std::int64_t>> used;
  for (const auto& t0 : params) {
    if (used.size() == 2) break;
    Eq2Slice s;
    try {
      s = eq2_slice(pi, t0, ctx);
    } catch (const PreconditionError& e) {
      rep.notes.push_back("t0=" + to_string(t0) + " skipped: " + e.what());
      continue;
    }
    std::int64_t rhs = -m0 + s.sum_mu + s.sum_m;
    rep.values["sum_mu@" + to_string(t0)] = s.sum_mu;
    rep.values["sum_m@" + to_string(t0)] = s.sum_m;
    rep.verdicts.push_back(Verdict::check(label("eq2", t0), mu, rhs, "mu(f0)",
                                          "-" + std::to_string(m0) + " + " + std::to_string(s.sum_mu) + " + " +
                                              std::to_string(s.sum_m)));
    used.emplace_back(t0, rhs);
  }
  if (used.size() < 2) throw PreconditionError("fewer than two admissible slice parameters");
  rep.verdicts.push_back(Verdict::check("eq2 window agreement", used[0].second, used[1].second,
                                        "rhs at t0=" + to_string(used[0].first),
                                        "rhs at t0=" + to_string(used[1].first)));
  return rep;
}

Report verify_ipaimplies2(const Parameterization& pi, const CoordTuple& coords, Context& ctx) {
  if (!pi.has_parameter_shape()) throw PreconditionError("not an unfolding: first component must be the parameter");
  if (coords.ring() != pi.target()) throw PreconditionError("coordinates are not on the target");
  SliceCoords sc = split_parameter(coords);
  if (sc.t != 0) throw PreconditionError("first coordinate must be the parameter");
  const Limits& lim = ctx.limits;
  require_ipa_tuple(image_equation(pi, lim), coords, ctx);
  Report rep{"verify-ipa2", {}, {}, {}};
  NdotMultiplicities n0 = ndot_multiplicities(pi.slice(0), sc.slice, ctx);
  std::int64_t lhs = n0.lambda.at(0);
  std::int64_t lam0 = ndot_polar_from_unfolding(pi, coords, lim);
  NdotMultiplicities nt = ndot_multiplicities(pi, coords, ctx);
  std::int64_t lam1 = 0;
  if (nt.n == 2) {
    lam1 = nt.top;
    rep.verdicts.push_back(Verdict::check("ipa2", lhs, lam1 - lam0, "N lambda0(f0)",
                                          "N lambda1 " + std::to_string(lam1) + " - N lambda0 " + std::to_string(lam0)));
  } else {
    // lambda0 - lambda1 + lambda2 = m(0) on a threefold
    std::int64_t gap = nt.top - nt.m_origin;
    lam1 = gap + lam0;
    rep.verdicts.push_back(Verdict::check("ipa2", lhs, gap, "N lambda0(f0)",
                                          "N lambda2 " + std::to_string(nt.top) + " - m(0) " +
                                              std::to_string(nt.m_origin)));
    rep.notes.push_back("lambda1 - lambda0 of the total space read from the alternating sum");
  }
  rep.values = {{"lambda0_N_f0", lhs}, {"lambda0_N", lam0}, {"lambda1_N", lam1}, {"m0_total", nt.m_origin}};
  return rep;
}

namespace {

Report thm_main(const Poly& f, const CoordTuple& coords, const Parameterization* pi, Context& ctx,
                const std::vector<Rational>& params) {
  const Limits& lim = ctx.limits;
  if (coords.ring() != f.ring()) throw PreconditionError("coordinates are not on the ring of f");
  SliceCoords sc = split_parameter(coords);
  if (pi && sc.t != 0) throw PreconditionError("first coordinate must be the parameter");
  require_ipa_tuple(f, coords, ctx);
  Report rep{"verify-main", {}, {}, {}};

  // (a) slice formula
  for (auto v : verify_slice_formula(f, coords, ctx)) {
    v.name = "basic: " + v.name;
    rep.verdicts.push_back(std::move(v));
  }
  Poly f0 = fiber_at(f, sc.t, 0);
  LeNumbers le0 = le_numbers(f0, sc.slice, ctx);
  LeNumbers tot = le_numbers(f, coords, ctx);
  std::int64_t polar = polar_number(f, coords, 1, lim);
  rep.values["lambda0_f0"] = le0.at(0);
  rep.values["polar"] = polar;
  for (const auto& [i, v] : tot.values) rep.values["lambda" + std::to_string(i) + "_f"] = v;

  // (b), (c) comparison-complex links
  std::int64_t lam0N_f0 = 0, lam1N = 0;
  bool surface_slices = false;
  if (pi) {
    NdotMultiplicities nt = ndot_multiplicities(*pi, coords, ctx);
    std::int64_t lam0N = ndot_polar_from_unfolding(*pi, coords, lim);
    if (nt.n == 2) {
      rep.verdicts.push_back(Verdict::check("polar = N lambda0", polar, nt.top - nt.m_origin, "polar number",
                                            "N lambda1 - m(0)"));
      lam1N = nt.top;
    } else {
      surface_slices = true;
      if (pi->is_trivial_unfolding()) {
        rep.verdicts.push_back(Verdict::check("polar = N lambda0", polar, 0, "polar number", "trivial unfolding"));
        rep.notes.push_back("N lambda0 of a trivial unfolding is 0 (product)");
      } else {
        rep.notes.push_back("polar = N lambda0 not checked on a threefold that is not a product");
      }
      lam1N = nt.top - nt.m_origin + lam0N;
    }
    Report ipa2 = verify_ipaimplies2(*pi, coords, ctx);
    absorb(rep, ipa2, "");
    lam0N_f0 = ipa2.values.at("lambda0_N_f0");
  } else {
    rep.notes.push_back("hypersurface input: comparison-complex links skipped");
  }

  // (d) slice aggregates
  int top = std::max(le0.sigma_dim, tot.sigma_dim - 1);
  top = std::max(top, 0);
  std::vector<std::pair<Rational, std::vector<std::int64_t>>> windows;
  for (const auto& t0 : params) {
    if (windows.size() == 2) break;
    std::vector<std::int64_t> agg;
    std::int64_t aggN = 0;
    try {
      agg = slice_le_aggregates(fiber_at(f, sc.t, t0), sc.slice, top, lim);
      if (pi) {
        Parameterization pt = pi->slice(t0);
        if (!surface_slices)
          aggN = multiple_point_total(pt, ctx);
        else if (pi->is_trivial_unfolding())
          aggN = ndot_multiplicities(pt, sc.slice, ctx).lambda.at(0);
        else
          aggN = lam1N;
      }
    } catch (const PreconditionError& e) {
      rep.notes.push_back("t0=" + to_string(t0) + " skipped: " + e.what());
      continue;
    }
    rep.verdicts.push_back(Verdict::check(label("sum lambda0(f_t0) = lambda1(f)", t0), agg[0], tot.at(1)));
    for (std::size_t i = 1; i < agg.size(); ++i)
      rep.verdicts.push_back(Verdict::check(label("lambda" + std::to_string(i) + "(f0) = sum", t0), le0.at(i), agg[i]));
    if (pi) {
      if (surface_slices && !pi->is_trivial_unfolding())
        note_once(rep, "N aggregate on surface slices taken from the total space");
      else
        rep.verdicts.push_back(Verdict::check(label("sum N lambda0(f_t0) = N lambda1", t0), aggN, lam1N));
      rep.verdicts.push_back(Verdict::check(label("conservation", t0), le0.at(0), -lam0N_f0 + agg[0] + aggN,
                                            "lambda0(f0)", "-N lambda0(f0) + sum lambda0 + sum N lambda0"));
    } else {
      rep.verdicts.push_back(Verdict::check(label("conservation", t0), le0.at(0), polar + agg[0], "lambda0(f0)",
                                            "polar + sum lambda0"));
    }
    agg.push_back(aggN);
    windows.emplace_back(t0, std::move(agg));
  }
  if (windows.size() < 2) throw PreconditionError("fewer than two admissible slice parameters");

  // (e) t0-independence
  const auto& [ta, a] = windows[0];
  const auto& [tb, b] = windows[1];
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string what = i + 1 == a.size() ? "sum N lambda0" : "sum lambda" + std::to_string(i);
    rep.verdicts.push_back(Verdict::check("t0-independence " + what, a[i], b[i], "t0=" + to_string(ta),
                                          "t0=" + to_string(tb)));
    rep.values[what + "@" + to_string(ta)] = a[i];
    rep.values[what + "@" + to_string(tb)] = b[i];
  }
  return rep;
}

}  // namespace

Report verify_thm_main(const Poly& f, const CoordTuple& coords, Context& ctx, const std::vector<Rational>& params) {
  return thm_main(f, coords, nullptr, ctx, params);
}

Report verify_thm_main(const Parameterization& pi, const CoordTuple& coords, Context& ctx,
                       const std::vector<Rational>& params) {
  if (!pi.has_parameter_shape()) throw PreconditionError("not an unfolding: first component must be the parameter");
  if (coords.ring() != pi.target()) throw PreconditionError("coordinates are not on the target");
  return thm_main(image_equation(pi, ctx.limits), coords, &pi, ctx, params);
}

// ---------------------------------------------------------------- surfaces

SurfaceInvariants surface_invariants(const Parameterization& pi, const CoordTuple& coords, Context& ctx,
                                     const std::vector<Rational>& params) {
  const Limits& lim = ctx.limits;
  if (!pi.has_parameter_shape() || pi.source_dim() != 3 || pi.target_dim() != 4 || pi.branches().size() != 1)
    throw PreconditionError("surface invariants need a one-branch unfolding (t, x, y) -> (t, x, p, q)");
  if (pi.branches()[0][1] != Poly::variable(pi.source(), 1))
    throw PreconditionError("not in corank-one shape: second component must be the second source variable");
  if (coords.ring() != pi.target()) throw PreconditionError("coordinates are not on the target");
  SliceCoords sc = split_parameter(coords);
  if (sc.t != 0) throw PreconditionError("first coordinate must be the parameter");

  SurfaceInvariants s;
  Parameterization p0 = pi.slice(0);
  const auto& b0 = p0.branches()[0];
  s.C = finite_local(Ideal(p0.source(), {diff(b0[1], 1), diff(b0[2], 1)}), lim, "cross-cap locus of the germ");
  std::int64_t tri = finite_local(triple_point_source_ideal(p0), lim, "triple-point ideal of the germ");
  s.T = tri / 6;
  if (tri % 6 != 0) s.notes.push_back("triple-point colength " + std::to_string(tri) + " is not divisible by 6");
  s.delta = ndot_polar_from_unfolding(pi, coords, lim);

  NdotMultiplicities nt = ndot_multiplicities(pi, coords, ctx);
  const VarRing& tr = pi.target();
  if (!nt.components.empty()) {
    Ideal sig = nt.components[0].ideal;
    for (std::size_t i = 1; i < nt.components.size(); ++i) sig = intersect(sig, nt.components[i].ideal, lim);
    s.sigma = sig;
    std::vector<Poly> gens = sig.basis(TermOrder::grevlex(), lim);

    // absolute polar curve of (t, z) on the double-point surface
    std::vector<Poly> rank_drop = gens;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        Poly d = det({gradient(gens[i]), gradient(gens[j]), constant_row(coords.forms()[0], tr),
                      constant_row(coords.forms()[1], tr)});
        if (!d.is_zero()) rank_drop.push_back(std::move(d));
      }
    std::vector<Poly> sing = gens;
    for (auto& m : jacobian_minors2(gens)) sing.push_back(std::move(m));
    Ideal gamma = saturate_generic(Ideal(tr, rank_drop), Ideal(tr, sing), ctx.rng, lim);
    // P sums the critical points of z on the double curves of the t0 slices,
    // so by conservation of number it is the intersection with V(t)
    Poly t = coords.forms()[0].to_poly(tr), z = coords.forms()[1].to_poly(tr);
    s.P = finite_local(gamma.plus(std::vector<Poly>{t}), lim, "absolute polar curve cut by t");
    s.P_z = finite_local(gamma.plus(std::vector<Poly>{z}), lim, "absolute polar curve cut by z");
    s.polar_curve = gamma;
    // complex link, when the double-point surface is cut out by two equations
    std::optional<Ideal> two;
    for (std::size_t i = 0; i < gens.size() && !two; ++i)
      for (std::size_t j = i + 1; j < gens.size() && !two; ++j) {
        Ideal cand(tr, {gens[i], gens[j]});
        if (cand.contains(sig, lim)) two = cand;
      }
    if (two) {
      try {
        s.chi_link = icis_complex_link_euler(*two, coords.forms()[0], ctx);
      } catch (const PreconditionError& e) {
        s.notes.push_back(std::string("complex link not computed: ") + e.what());
      }
    } else {
      s.notes.push_back("double-point surface is not cut out by two equations");
    }
  } else {
    s.chi_link = 0;
    s.notes.push_back("double-point surface is empty");
  }

  // the same counts on a stable slice
  bool found = false;
  for (const auto& t0 : params) {
    try {
      Parameterization pt = pi.slice(t0);
      const auto& bt = pt.branches()[0];
      Ideal ram(pt.source(), {diff(bt[1], 1), diff(bt[2], 1)});
      std::int64_t c = 0;
      if (!ram.is_unit(lim)) {
        std::int64_t len = finite_global(ram, lim, "cross-cap locus of the slice");
        c = static_cast<std::int64_t>(distinct_root_count(ram, ctx));
        if (c != len) throw PreconditionError("cross caps of the slice are not simple");
      }
      std::vector<std::string> notes;
      std::int64_t t = slice_triple_points(pt, ctx, notes);
      s.C_slice = c;
      s.T_slice = t;
      s.t0 = t0;
      for (auto& n : notes) s.notes.push_back(std::move(n));
      found = true;
      break;
    } catch (const PreconditionError& e) {
      s.notes.push_back("t0=" + to_string(t0) + " skipped: " + e.what());
    }
  }
  if (!found) throw PreconditionError("no admissible slice parameter");
  s.notes.push_back("P counted as an intersection multiplicity with V(t)");
  if (s.P_z != s.P) s.notes.push_back("the polar curve meets V(z) with multiplicity " + std::to_string(s.P_z));
  return s;
}

namespace {

void put_invariants(Report& rep, const SurfaceInvariants& s) {
  rep.values["T"] = s.T;
  rep.values["C"] = s.C;
  rep.values["delta"] = s.delta;
  rep.values["P"] = s.P;
  rep.values["P_z"] = s.P_z;
  rep.values["T_slice"] = s.T_slice;
  rep.values["C_slice"] = s.C_slice;
  if (s.chi_link) rep.values["chi_link"] = *s.chi_link;
  for (const auto& n : s.notes) rep.notes.push_back(n);
  rep.notes.push_back("slice counts at t0=" + to_string(s.t0));
}

}  // namespace

Report verify_thm_surface(const Parameterization& pi, const CoordTuple& coords, Context& ctx,
                          const std::vector<Rational>& params) {
  SurfaceInvariants s = surface_invariants(pi, coords, ctx, params);
  SliceCoords sc = split_parameter(coords);
  NdotMultiplicities n0 = ndot_multiplicities(pi.slice(0), sc.slice, ctx);
  Report rep{"verify-surface", {}, {}, {}};
  put_invariants(rep, s);
  rep.values["lambda0_N_f0"] = n0.lambda.at(0);
  rep.values["lambda1_N_f0"] = n0.top;
  rep.values["m0"] = n0.m_origin;
  rep.verdicts.push_back(Verdict::check("surface formula", n0.lambda.at(0), s.T + s.C - s.delta + s.P,
                                        "N lambda0(f0)", "T + C - delta + P"));
  rep.verdicts.push_back(Verdict::check("triple points germ vs slice", s.T, s.T_slice, "divided differences / 6",
                                        "slice fiber count"));
  rep.verdicts.push_back(Verdict::check("cross caps germ vs slice", s.C, s.C_slice, "local colength", "slice count"));
  return rep;
}

Report verify_cor_surface(const Parameterization& pi, const CoordTuple& coords, Context& ctx,
                          const std::vector<Rational>& params) {
  SurfaceInvariants s = surface_invariants(pi, coords, ctx, params);
  SliceCoords sc = split_parameter(coords);
  NdotMultiplicities n0 = ndot_multiplicities(pi.slice(0), sc.slice, ctx);
  Report rep{"verify-corollary", {}, {}, {}};
  put_invariants(rep, s);
  std::int64_t altsum = n0.top - 2 * s.T - s.P;
  rep.values["chi_altsum"] = altsum;
  rep.values["m0"] = n0.m_origin;
  std::int64_t chi = altsum;
  if (s.chi_link) {
    chi = *s.chi_link;
    rep.verdicts.push_back(Verdict::check("complex link routes", *s.chi_link, altsum, "ICIS colengths",
                                          "N lambda1(f0) - 2T - P"));
  } else {
    rep.notes.push_back("altsum route, algebraically dependent on the surface formula");
  }
  rep.verdicts.push_back(Verdict::check("surface corollary", -n0.m_origin, s.C - s.T - s.delta - chi, "-m(0)",
                                        "C - T - delta - chi"));
  return rep;
}

std::int64_t icis_curve_milnor(const Poly& h1, const Poly& h2, Context& ctx) {
  const Limits& lim = ctx.limits;
  const VarRing& r = h1.ring();
  if (r.size() != 3) throw PreconditionError("curve must lie in 3-space");
  std::vector<Rational> zero(3, Rational(0));
  if (evaluate(h1, zero) != 0 || evaluate(h2, zero) != 0) throw PreconditionError("curve does not pass through 0");
  Ideal curve(r, {h1, h2});
  std::vector<Poly> crit = {h1, h2};
  for (auto& m : jacobian_minors2({h1, h2})) crit.push_back(std::move(m));
  if (!local_colength_origin(Ideal(r, crit), lim).value)
    throw PreconditionError("not an isolated complete intersection singularity");
  for (int attempt = 0; attempt < 12; ++attempt) {
    Rational a = attempt == 0 ? Rational(1) : Rational(static_cast<long>(ctx.rng.nonzero(5)));
    Rational b = attempt == 0 ? Rational(0) : Rational(static_cast<long>(ctx.rng.nonzero(5)));
    Rational c = attempt == 0 ? Rational(0) : Rational(static_cast<long>(ctx.rng.nonzero(5)));
    Rational d = attempt == 0 ? Rational(1) : Rational(static_cast<long>(ctx.rng.nonzero(5)));
    if (a * d - b * c == 0) continue;
    Poly u = h1 * a + h2 * b, v = h1 * c + h2 * d;
    auto mu_u = local_colength_origin(jacobian_ideal(u), lim).value;
    if (!mu_u) continue;
    std::vector<Poly> gens{u};
    for (auto& m : jacobian_minors2({u, v})) gens.push_back(std::move(m));
    auto total = local_colength_origin(Ideal(r, gens), lim).value;
    if (!total) continue;
    return static_cast<std::int64_t>(*total) - static_cast<std::int64_t>(*mu_u);
  }
  throw SamplingError("no combination of the equations has an isolated singularity");
}

std::int64_t icis_complex_link_euler(const Ideal& I, const LinearForm& ell, Context& ctx) {
  const VarRing& r = I.ring();
  if (r.size() != 4 || I.generators().size() != 2) throw PreconditionError("expected two equations in four variables");
  const auto& g = I.generators();
  std::vector<Rational> zero(4, Rational(0));
  if (evaluate(g[0], zero) != 0 || evaluate(g[1], zero) != 0) throw PreconditionError("surface does not pass through 0");
  std::vector<Poly> crit = g;
  for (auto& m : jacobian_minors2(g)) crit.push_back(std::move(m));
  if (!local_colength_origin(Ideal(r, crit), ctx.limits).value)
    throw PreconditionError("not an isolated complete intersection singularity");
  if (ell.is_zero()) throw PreconditionError("slicing form is zero");

  // complete ell to coordinates with unit vectors
  std::vector<LinearForm> forms{ell};
  for (std::size_t j = 0; j < 4 && forms.size() < 4; ++j) {
    LinearForm e;
    e.coeffs.assign(4, Rational(0));
    e.coeffs[j] = 1;
    forms.push_back(e);
    RationalMatrix m(forms.size(), 4);
    for (std::size_t i = 0; i < forms.size(); ++i)
      for (std::size_t k = 0; k < 4; ++k) m(i, k) = forms[i].coeffs[k];
    if (m.rank() != forms.size()) forms.pop_back();
  }
  CoordTuple ct(r, forms);
  std::vector<std::size_t> first{0};
  Poly h1 = restrict_to_zero(ct.to_coords(g[0]), first);
  Poly h2 = restrict_to_zero(ct.to_coords(g[1]), first);
  try {
    return 1 - icis_curve_milnor(h1, h2, ctx);
  } catch (const PreconditionError& e) {
    throw PreconditionError(std::string("improper slice: ") + e.what());
  }
}

}  // namespace leforge
