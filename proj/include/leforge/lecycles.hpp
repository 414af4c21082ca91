#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leforge/ideal.hpp"
#include "leforge/verdict.hpp"

namespace leforge {

/// Linear coordinates z_i = sum_j A(i,j) x_j on a ring.
class CoordTuple {
 public:
  CoordTuple() = default;
  CoordTuple(VarRing ring, std::vector<LinearForm> forms);
  static CoordTuple standard(const VarRing& ring);
  /// Entries are linear-form strings or "generic": a random form in the
  /// variables that are not themselves listed as entries.
  static CoordTuple parse(const VarRing& ring, const std::vector<std::string>& entries, Rng& rng);

  const VarRing& ring() const { return ring_; }
  const std::vector<LinearForm>& forms() const { return forms_; }
  const RationalMatrix& matrix() const { return a_; }
  std::vector<std::string> describe() const;

  /// f rewritten so that variable i is z_i.
  Poly to_coords(const Poly& f) const { return linear_change(f, inv_); }
  Poly from_coords(const Poly& g) const { return linear_change(g, a_); }

 private:
  VarRing ring_;
  std::vector<LinearForm> forms_;
  RationalMatrix a_, inv_;
};

Ideal jacobian_ideal(const Poly& f);

/// Relative polar ideals of g (already in z-coordinates), computed on demand.
class PolarData {
 public:
  PolarData(const Poly& f, const CoordTuple& coords, const Limits& lim);

  const Poly& g() const { return g_; }
  const Ideal& sigma() const { return sigma_; }
  std::size_t n_plus_1() const { return g_.ring().size(); }
  /// gamma_k, 0 <= k <= n+1.
  const Ideal& gamma(std::size_t k) const;
  /// gamma_k + <z_0, ..., z_{k-1}>.
  Ideal gamma_cut(std::size_t k) const;
  Poly partial(std::size_t i) const { return diff(g_, i); }

 private:
  Poly g_;
  Ideal sigma_;
  Limits lim_;
  mutable std::map<std::size_t, Ideal> gammas_;
};

struct LeNumbers {
  int sigma_dim = -1;
  std::map<std::size_t, std::int64_t> values;         // i -> lambda^i
  std::map<std::size_t, std::int64_t> polar_numbers;  // k -> (Gamma^k . V(z_0..z_{k-1}))_0
  unsigned max_stabilized_at = 0;

  std::int64_t at(std::size_t i) const {
    auto it = values.find(i);
    return it == values.end() ? 0 : it->second;
  }
};

Ideal polar_ideal(const Poly& f, const CoordTuple& coords, std::size_t k, const Limits& lim);
std::int64_t polar_number(const Poly& f, const CoordTuple& coords, std::size_t k, const Limits& lim);
std::int64_t polar_number(const PolarData& pd, std::size_t k, const Limits& lim);
LeNumbers le_numbers(const Poly& f, const CoordTuple& coords, Context& ctx);
LeNumbers le_numbers(const PolarData& pd, Context& ctx);
std::int64_t milnor_number(const Poly& f, const Limits& lim);

struct IpaCheck {
  bool ipa = false;         // dim_0 gamma_1 + <z_0> <= 0
  bool via_f = false;       // dim_0 gamma_1 + <f> <= 0
  std::string warning;
};

IpaCheck is_ipa_deformation(const Poly& f, const CoordTuple& coords, const Limits& lim);
bool is_ipa_tuple(const Poly& f, const CoordTuple& coords, std::size_t k, const Limits& lim);

/// f|V(z_0) in the coordinates (z_1, ..., z_n).
Poly slice_first(const Poly& f, const CoordTuple& coords);

/// Lê numbers of f|V(z_0) against the polar number and Lê numbers of f.
Verdicts verify_slice_formula(const Poly& f, const CoordTuple& coords, Context& ctx);

}  // namespace leforge
