#include "doctest.h"
#include "support.hpp"

#include "leforge/error.hpp"

using namespace testing;

namespace {

Limits lim;

std::vector<Poly> gb(const Ideal& i, TermOrder o) { return groebner_basis(i, o, lim); }

/// Lex and block bases pass through much higher degrees than grevlex.
Colength colength_under(const Ideal& i, TermOrder o) {
  Limits roomy;
  roomy.max_degree = 400;
  std::vector<Monomial> leads;
  for (const auto& p : groebner_basis(i.generators(), o, roomy)) leads.push_back(leading_monomial(p, o));
  return count_standard_monomials(leads, i.ring().size());
}

/// I + m^k with the power generated explicitly, counted globally.
std::size_t explicit_truncated(const Ideal& i, unsigned k) {
  std::vector<Poly> extra;
  const auto& r = i.ring();
  std::function<void(std::size_t, unsigned, Monomial)> rec = [&](std::size_t v, unsigned left, Monomial m) {
    if (v + 1 == r.size()) {
      m.set(v, left);
      extra.push_back(Poly::monomial(r, m, 1));
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m.set(v, e);
      rec(v + 1, left - e, m);
    }
  };
  rec(0, k, Monomial());
  return *colength_global(i.plus(extra), lim);
}

Ideal random_ideal(Rng& rng, const VarRing& r, bool through_origin) {
  std::vector<Poly> g;
  int n = static_cast<int>(rng.uniform(1, 3));
  for (int k = 0; k < n; ++k) {
    Poly p = random_poly(rng, r, 4, 3, !through_origin);
    g.push_back(p);
  }
  return Ideal(r, g);
}

}  // namespace

TEST_CASE("basis examples") {
  auto r = ring({"x", "y"});
  auto b = gb(I(r, {"x-y", "y^2"}), TermOrder::lex());
  REQUIRE(b.size() == 2);
  CHECK(b[0] == P(r, "y^2"));
  CHECK(b[1] == P(r, "x-y"));
  auto b2 = gb(I(ring({"x"}), {"x^2-1", "x-1"}), TermOrder::lex());
  REQUIRE(b2.size() == 1);
  CHECK(b2[0] == P(ring({"x"}), "x-1"));
  CHECK(gb(Ideal(r, {Poly(r)}), TermOrder::grevlex()).empty());
}

TEST_CASE("normal form examples") {
  auto r = ring({"x", "y"});
  CHECK(normal_form(P(r, "x^2"), I(r, {"x-y", "y^2"}), TermOrder::lex(), lim).is_zero());
  CHECK(normal_form(P(r, "1"), I(r, {"x", "y"}), TermOrder::grevlex(), lim) == P(r, "1"));
  Poly p = P(r, "x^3+y");
  CHECK(normal_form(p, Ideal(r), TermOrder::grevlex(), lim) == p);
}

TEST_CASE("quotient and saturation examples") {
  auto r = ring({"x", "y"});
  CHECK(ideal_quotient(I(r, {"x^2", "x*y"}), I(r, {"x"}), lim).equals(I(r, {"x", "y"}), lim));
  Ideal i = I(r, {"x^3+y", "y^2*x"});
  CHECK(ideal_quotient(i, Ideal::unit(r), lim).equals(i, lim));
  CHECK(ideal_quotient(I(r, {"x"}), I(r, {"y"}), lim).equals(I(r, {"x"}), lim));
  CHECK(saturate(I(r, {"x*y", "y^2"}), I(r, {"y"}), lim).equals(I(r, {"x", "y"}), lim) == false);
  // <xy, y^2> : y^inf is the unit ideal; one quotient step gives <x, y>.
  CHECK(ideal_quotient(I(r, {"x*y", "y^2"}), I(r, {"y"}), lim).equals(I(r, {"x", "y"}), lim));
  CHECK(saturate(I(r, {"x*y", "y^2"}), I(r, {"y"}), lim).is_unit(lim));
  auto txy = ring({"t", "x", "y"});
  Ideal polar = saturate(I(txy, {"x*(3*x+2*t)", "y"}), I(txy, {"x^2", "t*x", "y"}), lim);
  CHECK(polar.equals(I(txy, {"3*x+2*t", "y"}), lim));
  CHECK(saturate(i, Ideal::unit(r), lim).equals(i, lim));
}

TEST_CASE("elimination examples") {
  auto r = ring({"u", "X", "Y"});
  Ideal e = eliminate(I(r, {"X-u^2", "Y-u^3"}), std::vector<std::size_t>{0}, lim);
  auto xy = ring({"X", "Y"});
  CHECK(e.equals(I(xy, {"Y^2-X^3"}), lim));
  auto ux = ring({"u", "X"});
  CHECK(eliminate(I(ux, {"X-u"}), std::vector<std::size_t>{0}, lim).is_zero());
  CHECK(eliminate(I(ux, {"u", "X-u"}), std::vector<std::size_t>{0}, lim).equals(I(ring({"X"}), {"X"}), lim));
}

TEST_CASE("global colength examples") {
  auto r = ring({"x", "y"});
  CHECK(colength_global(I(r, {"x^2", "y^3"}), lim) == 6u);
  CHECK(colength_global(I(r, {"3*x^2", "2*y"}), lim) == 2u);
  CHECK(colength_global(I(ring({"x"}), {"x-1"}), lim) == 1u);
  CHECK(!colength_global(Ideal(r), lim).has_value());
  CHECK(colength_global(Ideal::unit(r), lim) == 0u);
}

TEST_CASE("local colength examples") {
  auto r = ring({"x", "y"});
  auto a = local_colength_origin(I(r, {"x*(x-1)", "y"}), lim);
  CHECK(a.value == 1u);
  auto txy = ring({"t", "x", "y"});
  CHECK(local_colength_origin(I(txy, {"3*x+2*t", "y", "t"}), lim).value == 1u);
  CHECK(local_colength_origin(Ideal::unit(r), lim).value == 0u);
  CHECK(!local_colength_origin(I(r, {"y^2-x^3"}), lim).value.has_value());
  CHECK(local_colength_origin(I(r, {"x^2", "y^3"}), lim).value == 6u);
  CHECK(local_colength_origin(I(r, {"3*x^2", "2*y"}), lim).value == 2u);
  // <x^2 + y^3, x*y>: Milnor-like algebra, length 5 at the origin, 5 globally too
  CHECK(local_colength_origin(I(r, {"x^2+y^3", "x*y"}), lim).value == 5u);
  // two extra points away from the origin are invisible locally
  CHECK(local_colength_origin(I(r, {"x*(x-1)*(x+2)", "y"}), lim).value == 1u);
}

TEST_CASE("local dimension examples") {
  Context ctx(1);
  auto r = ring({"x", "y"});
  CHECK(local_dim_origin(I(r, {"y^2-x^3"}), ctx) == 1);
  CHECK(local_dim_origin(I(r, {"x", "y"}), ctx) == 0);
  CHECK(local_dim_origin(I(r, {"x-1"}), ctx) == -1);
  CHECK(local_dim_origin(Ideal(r), ctx) == 2);
  auto r3 = ring({"x", "y", "z"});
  CHECK(local_dim_origin(I(r3, {"x*y", "x*z"}), ctx) == 2);
  CHECK(local_dim_origin(I(r3, {"x*y", "x*z", "y*z"}), ctx) == 1);
}

TEST_CASE("distinct root counting") {
  Context ctx(3);
  auto u = ring({"u"});
  CHECK(distinct_root_count(I(u, {"u^2"}), ctx) == 1);
  CHECK(distinct_root_count(I(u, {"u^2-1"}), ctx) == 2);
  CHECK(distinct_root_count(I(u, {"u^3-u"}), ctx) == 3);
  auto r = ring({"x", "y"});
  CHECK(distinct_root_count(I(r, {"x^2-1", "y^2-x"}), ctx) == 4);
  CHECK(distinct_root_count(I(r, {"x^2", "y^2"}), ctx) == 1);
  CHECK(distinct_root_count(I(r, {"x^2-y", "y^2-y"}), ctx) == 3);
  CHECK_THROWS_AS(distinct_root_count(I(r, {"x"}), ctx), PreconditionError);
}

TEST_CASE("engine properties over random ideals") {
  Rng rng(2024);
  Context ctx(99);
  std::vector<VarRing> rings{ring({"x"}), ring({"x", "y"}), ring({"x", "y", "z"})};
  int zero_dim = 0, local_checked = 0;
  for (int it = 0; it < 240; ++it) {
    const VarRing& r = rings[static_cast<std::size_t>(it % 3)];
    bool origin = it % 2 == 0;
    Ideal i = random_ideal(rng, r, origin);
    CAPTURE(i.to_string());
    for (const auto& g : i.generators()) CHECK(normal_form(g, i, TermOrder::grevlex(), lim).is_zero());
    Colength g1 = colength_under(i, TermOrder::grevlex());
    CHECK(g1 == colength_under(i, TermOrder::elimination(1)));
    if (r.size() == 3) CHECK(g1 == colength_under(i, TermOrder::elimination(2)));
    CHECK(g1 == colength_under(i, TermOrder::lex()));
    CHECK(g1 == colength_global(i, lim));
    if (g1) {
      ++zero_dim;
      CHECK(distinct_root_count(i, ctx) <= *g1);
    }
    auto loc = local_colength_origin(i, lim);
    if (g1) {
      REQUIRE(loc.value.has_value());
      CHECK(*loc.value <= *g1);
    }
    if (loc.value) {
      ++local_checked;
      for (unsigned k = 1; k <= loc.stabilized_at + 2; ++k) CHECK(truncated_colength(i, k, lim) == explicit_truncated(i, k));
      // adding an element can only shrink the local length
      Ideal bigger = i.plus(std::vector<Poly>{random_poly(rng, r, 3, 2, !origin)});
      auto lb = local_colength_origin(bigger, lim);
      REQUIRE(lb.value.has_value());
      CHECK(*lb.value <= *loc.value);
    }
    Ideal j = random_ideal(rng, r, true);
    Ideal s = saturate(i, j, lim);
    CHECK(saturate(s, j, lim).equals(s, lim));
    if (it % 4 == 0) CHECK(saturate_by_quotients(i, j, lim).equals(s, lim));
  }
  MESSAGE("zero-dimensional instances: " << zero_dim << ", finite local lengths: " << local_checked);
}

TEST_CASE("resource caps fail loudly") {
  Limits tight;
  tight.max_degree = 4;
  auto r = ring({"x", "y"});
  CHECK_THROWS_AS(groebner_basis(I(r, {"x^3 - y^2", "x*y^3 - 1"}).generators(), TermOrder::lex(), tight), ResourceError);
}
