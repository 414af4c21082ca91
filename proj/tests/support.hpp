#pragma once

#include <string>
#include <vector>

#include "leforge/ideal.hpp"
#include "leforge/parse.hpp"
#include "leforge/rng.hpp"

namespace testing {

using namespace leforge;

inline VarRing ring(std::vector<std::string> names) { return VarRing(std::move(names)); }

inline Poly P(const VarRing& r, const std::string& s) { return parse_poly(s, r); }

inline Ideal I(const VarRing& r, std::vector<std::string> gens) {
  std::vector<Poly> ps;
  for (const auto& g : gens) ps.push_back(parse_poly(g, r));
  return Ideal(r, std::move(ps));
}

/// Random polynomial with small integer coefficients.
inline Poly random_poly(Rng& rng, const VarRing& r, unsigned max_deg, int max_terms, bool allow_constant = true) {
  std::vector<Term> ts;
  int nt = static_cast<int>(rng.uniform(1, max_terms));
  for (int k = 0; k < nt; ++k) {
    Monomial m;
    unsigned budget = static_cast<unsigned>(rng.uniform(allow_constant ? 0 : 1, max_deg));
    for (unsigned d = 0; d < budget; ++d) {
      auto v = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(r.size()) - 1));
      m.set(v, m[v] + 1);
    }
    ts.push_back({m, Rational(static_cast<long>(rng.nonzero(5)))});
  }
  return Poly::from_terms(r, std::move(ts));
}

}  // namespace testing
