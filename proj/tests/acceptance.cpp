// One line per acceptance criterion; exit status 0 iff every line is PASS.
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "leforge/cli.hpp"
#include "leforge/deform.hpp"
#include "leforge/error.hpp"
#include "leforge/parse.hpp"

using namespace leforge;

namespace {

Limits lim;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
  void eq(std::int64_t a, std::int64_t b, const std::string& what) {
    detail << " " << what << "=" << a;
    expect(a == b, what + " expected " + std::to_string(b));
  }
  void all(const Report& r, const std::string& what) {
    for (const auto& v : r.verdicts)
      expect(v.pass, what + ": " + v.name + " " + render_verdict(v.pass, v.lhs, v.rhs));
  }
};

Poly P(const VarRing& r, const std::string& s) { return parse_poly(s, r); }

Parameterization map_of(std::vector<std::string> src, std::vector<std::string> tgt,
                        std::vector<std::vector<std::string>> branches) {
  VarRing s(std::move(src)), t(std::move(tgt));
  std::vector<std::vector<Poly>> bs;
  for (const auto& b : branches) {
    std::vector<Poly> comps;
    for (const auto& c : b) comps.push_back(P(s, c));
    bs.push_back(std::move(comps));
  }
  return Parameterization(s, t, std::move(bs));
}

CoordTuple t_first(const VarRing& r, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> e{"t"};
  for (std::size_t i = 1; i < r.size(); ++i) e.push_back("generic");
  return CoordTuple::parse(r, e, rng);
}

Parameterization cusp_family() { return map_of({"t", "u"}, {"t", "x", "y"}, {{"t", "u^2-t", "u*(u^2-t)"}}); }
Parameterization cross_cap() { return map_of({"t", "x", "y"}, {"t", "X", "Y", "Z"}, {{"t", "x", "y^2", "x*y"}}); }
Parameterization surface_family(const std::string& p, const std::string& q) {
  return map_of({"t", "x", "y"}, {"t", "X", "Y", "Z"}, {{"t", "x", p, q}});
}

void criterion1(Check& c) {
  VarRing r({"x", "y", "z"});
  auto pi = map_of({"a", "b"}, {"x", "y", "z"}, {{"0", "a", "b"}, {"a", "0", "b"}, {"a", "b", "0"}});
  Context ctx(1);
  auto n = ndot_multiplicities(pi, CoordTuple::parse(r, {"generic", "generic", "generic"}, ctx.rng), ctx);
  c.eq(n.lambda.at(0), 1, "lambda0");
  c.eq(n.lambda.at(1), 3, "lambda1");
  c.eq(n.m_origin, 2, "m0");
  c.eq(n.lambda.at(0) - n.lambda.at(1), -n.m_origin, "lambda0-lambda1");
  // the CLI builds the same normalization from f = xyz
  auto res = run_job_text(R"({"ring": ["x", "y", "z"], "object": {"kind": "hypersurface", "f": "x*y*z"},
                              "coords": ["generic", "generic", "generic"], "tasks": ["ndot"]})");
  c.expect(res.exit_code == kOk && res.report["results"][0]["lambda0"] == 1 &&
               res.report["results"][0]["lambda1"] == 3,
           "ndot job on f = xyz");
}

void criterion2(Check& c) {
  VarRing txy({"t", "x", "y"});
  Poly f = P(txy, "y^2-x^3-t*x^2");
  auto std3 = CoordTuple::standard(txy);
  Ideal want(txy, {P(txy, "3*x+2*t"), P(txy, "y")});
  bool same = polar_ideal(f, std3, 1, lim).equals(want, lim);
  c.detail << " polar_ideal=<3x+2t,y>:" << (same ? "yes" : "no");
  c.expect(same, "polar ideal");
  Context ctx(2);
  c.eq(ndot_multiplicities(cusp_family(), std3, ctx).lambda.at(0), 1, "N_lambda0_t");
  c.eq(polar_number(f, std3, 1, lim), 1, "polar_t");
}

void criterion3(Check& c) {
  Context ctx(3);
  auto pi = cusp_family();
  Report m = verify_milnor_formula(pi, ctx);
  c.all(m, "milnor");
  c.eq(m.values.at("mu"), 2, "mu");
  c.eq(m.values.at("delta"), 1, "delta");
  c.eq(m.values.at("r"), 1, "r");
  c.eq(2 * m.values.at("delta") - m.values.at("r") + 1, 2, "2delta-r+1");
  Report e = verify_eq2_windows(pi, ctx, {Rational(1, 4), Rational(1, 9)});
  c.all(e, "eq2");
  c.eq(e.values.at("m0"), 0, "m0");
  for (const char* t0 : {"1/4", "1/9"}) {
    c.eq(e.values.at(std::string("sum_mu@") + t0), 1, std::string("sum_mu@") + t0);
    c.eq(e.values.at(std::string("sum_m@") + t0), 1, std::string("sum_m@") + t0);
  }
  c.expect(e.verdicts.size() == 3 && e.verdicts[0].lhs == e.verdicts[1].lhs && e.verdicts[0].rhs == e.verdicts[1].rhs,
           "identical window verdicts");
}

void criterion4(Check& c) {
  VarRing xy({"x", "y"}), txy({"t", "x", "y"});
  Poly f = P(txy, "y^2-x^3-t*x^2");
  auto std3 = CoordTuple::standard(txy);
  Context ctx(4);
  std::int64_t lhs = milnor_number(P(xy, "y^2-x^3"), lim);
  std::int64_t polar = polar_number(f, std3, 1, lim);
  std::int64_t lam1 = le_numbers(f, std3, ctx).at(1);
  c.eq(lhs, 2, "mu(y^2-x^3)");
  c.eq(polar, 1, "polar");
  c.eq(lam1, 1, "lambda1");
  c.eq(lhs, polar + lam1, "rhs");
  c.all(Report{"", verify_slice_formula(f, std3, ctx), {}, {}}, "slice formula");
}

void criterion5(Check& c) {
  struct Entry {
    std::string name;
    std::function<Report(Context&)> run;
    bool needs_windows;
  };
  auto curve = cusp_family();
  auto xyz = map_of({"t", "a", "b"}, {"t", "x", "y", "z"},
                    {{"t", "0", "a", "b"}, {"t", "a", "0", "b"}, {"t", "a", "b", "0"}});
  auto smooth_curve = map_of({"t", "u"}, {"t", "x", "y"}, {{"t", "u", "u^2+t"}});
  auto smooth_surface = map_of({"t", "a", "b"}, {"t", "x", "y", "z"}, {{"t", "a", "b", "a^2+b^2"}});
  VarRing txy({"t", "x", "y"});
  std::vector<Entry> entries{
      {"cusp", [&](Context& ctx) { return verify_thm_main(curve, CoordTuple::standard(curve.target()), ctx); }, true},
      {"umbrella",
       [&](Context& ctx) { return verify_thm_main(P(txy, "y^2-x^3-t*x^2"), CoordTuple::standard(txy), ctx); },
       true},
      {"y2", [&](Context& ctx) { return verify_thm_main(P(txy, "y^2"), t_first(txy, 3), ctx); }, true},
      {"xyz", [&](Context& ctx) { return verify_thm_main(xyz, t_first(xyz.target(), 1), ctx); }, true},
      {"smooth-curve",
       [&](Context& ctx) { return verify_thm_main(smooth_curve, CoordTuple::standard(smooth_curve.target()), ctx); },
       true},
      {"smooth-surface", [&](Context& ctx) { return verify_thm_main(smooth_surface, t_first(smooth_surface.target(), 2), ctx); },
       true},
      {"smooth-hypersurface", [&](Context& ctx) { return verify_thm_main(P(txy, "x+t"), t_first(txy, 3), ctx); }, true},
      {"ipa2 cusp",
       [&](Context& ctx) { return verify_ipaimplies2(curve, CoordTuple::standard(curve.target()), ctx); }, false},
      {"ipa2 xyz", [&](Context& ctx) { return verify_ipaimplies2(xyz, t_first(xyz.target(), 1), ctx); }, false},
      {"ipa2 smooth",
       [&](Context& ctx) { return verify_ipaimplies2(smooth_curve, CoordTuple::standard(smooth_curve.target()), ctx); },
       false},
  };
  std::size_t links = 0;
  for (const auto& e : entries) {
    Context ctx(5);
    Report r = e.run(ctx);
    c.all(r, e.name);
    links += r.verdicts.size();
    if (e.needs_windows) {
      bool independence = false;
      for (const auto& v : r.verdicts)
        if (v.name.rfind("t0-independence", 0) == 0) independence = true;
      c.expect(independence, e.name + ": no two-window comparison");
    }
  }
  c.detail << " entries=" << entries.size() << " links=" << links;
}

void criterion6(Check& c) {
  Context ctx(6);
  auto cc = cross_cap();
  SurfaceInvariants s = surface_invariants(cc, t_first(cc.target(), 6), ctx);
  c.eq(s.T, 0, "T");
  c.eq(s.C, 1, "C");
  c.eq(s.delta, 0, "delta");
  c.eq(s.P, 0, "P");
  Report r = verify_thm_surface(cc, t_first(cc.target(), 6), ctx);
  c.all(r, "cross cap");
  c.eq(r.values.at("lambda0_N_f0"), 1, "cross_cap_lambda0_N");
  std::vector<std::pair<std::string, Parameterization>> germs{
      {"S1", surface_family("y^2", "y^3+x^2*y-t*y")}, {"H2", surface_family("y^3+t*y", "x*y+y^5")}};
  for (const auto& [name, pi] : germs) {
    Report g = verify_thm_surface(pi, t_first(pi.target(), 7), ctx);
    c.all(g, name);
    bool triple = false;
    for (const auto& v : g.verdicts) triple = triple || v.name == "triple points germ vs slice";
    c.expect(triple, name + ": triple-point cross-check missing");
    c.detail << " " << name << ":" << g.values.at("lambda0_N_f0") << "=" << g.values.at("T") << "+"
             << g.values.at("C") << "-" << g.values.at("delta") << "+" << g.values.at("P");
  }
}

void criterion7(Check& c) {
  Context ctx(7);
  std::vector<std::pair<std::string, Parameterization>> icis{
      {"S1", surface_family("y^2", "y^3+x^2*y-t*y")}, {"B2", surface_family("y^2", "x^2*y+y^5-t*y")}};
  for (const auto& [name, pi] : icis) {
    Report r = verify_cor_surface(pi, t_first(pi.target(), 8), ctx);
    c.all(r, name);
    bool routes = false;
    for (const auto& v : r.verdicts) routes = routes || v.name == "complex link routes";
    c.expect(routes, name + ": complex-link route not taken");
    c.detail << " " << name << "_chi=" << (r.values.count("chi_link") ? r.values.at("chi_link") : -999);
  }
  auto cc = cross_cap();
  Report r = verify_cor_surface(cc, t_first(cc.target(), 8), ctx);
  c.all(r, "cross cap");
  c.eq(r.values.count("chi_link") ? r.values.at("chi_link") : -999, 1, "cross_cap_chi");
  for (const auto& v : r.verdicts)
    if (v.name == "surface corollary") c.eq(v.lhs, 0, "cross_cap_corollary");
}

Poly random_poly(Rng& rng, const VarRing& r, unsigned max_deg, int max_terms, unsigned min_deg) {
  std::vector<Term> ts;
  int nt = static_cast<int>(rng.uniform(1, max_terms));
  for (int k = 0; k < nt; ++k) {
    Monomial m;
    auto budget = static_cast<unsigned>(rng.uniform(min_deg, max_deg));
    for (unsigned d = 0; d < budget; ++d) {
      auto v = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(r.size()) - 1));
      m.set(v, m[v] + 1);
    }
    ts.push_back({m, Rational(static_cast<long>(rng.nonzero(5)))});
  }
  return Poly::from_terms(r, std::move(ts));
}

Colength colength_under(const Ideal& i, const TermOrder& o) {
  Limits roomy;
  roomy.max_degree = 400;
  std::vector<Monomial> leads;
  for (const auto& p : groebner_basis(i.generators(), o, roomy)) leads.push_back(leading_monomial(p, o));
  return count_standard_monomials(leads, i.ring().size());
}

void criterion8(Check& c) {
  Rng rng(2026);
  Context ctx(8);
  std::vector<VarRing> rings{VarRing({"x"}), VarRing({"x", "y"}), VarRing({"x", "y", "z"})};
  int ideals = 0, germs = 0, isolated = 0, jobs = 0, bad = 0;
  for (int it = 0; it < 240; ++it, ++ideals) {
    const VarRing& r = rings[static_cast<std::size_t>(it % 3)];
    std::vector<Poly> g;
    for (int k = 0, n = static_cast<int>(rng.uniform(1, 3)); k < n; ++k)
      g.push_back(random_poly(rng, r, 4, 3, it % 2 == 0 ? 1 : 0));
    Ideal i(r, g);
    Colength a = colength_under(i, TermOrder::grevlex());
    bool ok = a == colength_under(i, TermOrder::lex()) && a == colength_global(i, lim);
    auto loc = local_colength_origin(i, lim);
    if (a) ok = ok && loc.value && *loc.value <= *a;
    std::vector<Poly> jg{random_poly(rng, r, 4, 3, 1)};
    Ideal j(r, jg);
    Ideal s = saturate(i, j, lim);
    ok = ok && saturate(s, j, lim).equals(s, lim);
    if (!ok) ++bad;
  }
  for (int it = 0; it < 80; ++it) {
    const VarRing& r = rings[1 + static_cast<std::size_t>(it % 2)];
    Poly f = random_poly(rng, r, 4, 4, 2);
    CoordTuple co = CoordTuple::parse(r, std::vector<std::string>(r.size(), "generic"), ctx.rng);
    LeNumbers le;
    try {
      le = le_numbers(f, co, ctx);
    } catch (const PreconditionError&) {
      continue;
    }
    ++germs;
    bool ok = true;
    for (const auto& [k, v] : le.values) ok = ok && v >= 0;
    auto mu = local_colength_origin(jacobian_ideal(f), lim);
    if (mu.value) {
      ++isolated;
      ok = ok && le.values.size() == 1 && le.at(0) == static_cast<std::int64_t>(*mu.value);
    }
    if (!ok) ++bad;
  }
  for (int it = 0; it < 40; ++it, ++jobs) {
    const VarRing& r = rings[1 + static_cast<std::size_t>(it % 2)];
    Poly f = random_poly(rng, r, 4, 4, 2);
    nlohmann::json job{{"ring", r.names()},
                       {"object", {{"kind", "hypersurface"}, {"f", f.to_string()}}},
                       {"tasks", {"milnor", "le-numbers", "ipa-check"}},
                       {"options", {{"seed", it}}}};
    if (render_json(run_job(job).report) != render_json(run_job(job).report)) ++bad;
  }
  c.detail << " ideals=" << ideals << " germs=" << germs << " isolated=" << isolated << " jobs=" << jobs;
  c.expect(ideals + germs + jobs >= 200, "fewer than 200 instances");
  c.expect(bad == 0, std::to_string(bad) + " instances broke a property");
}

}  // namespace

int main() {
  std::vector<std::function<void(Check&)>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8};
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    try {
      criteria[k](c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << " [exception: " << e.what() << "]";
    }
    all = all && c.ok;
    std::cout << "criterion " << k + 1 << ": " << (c.ok ? "PASS" : "FAIL") << c.detail.str() << std::endl;
  }
  return all ? 0 : 1;
}
