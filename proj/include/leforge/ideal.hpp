#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "leforge/groebner.hpp"
#include "leforge/poly.hpp"
#include "leforge/rng.hpp"

namespace leforge {

/// Limits plus the seeded generator behind every genericity choice.
struct Context {
  Limits limits;
  Rng rng;

  explicit Context(std::uint64_t seed = 0, Limits lim = {}) : limits(lim), rng(seed) {}
};

class Ideal {
 public:
  explicit Ideal(VarRing ring, std::vector<Poly> gens = {});
  static Ideal unit(const VarRing& ring);

  const VarRing& ring() const { return ring_; }
  const std::vector<Poly>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  /// Cached reduced basis.
  const std::vector<Poly>& basis(const TermOrder& ord, const Limits& lim) const;

  Ideal operator+(const Ideal& o) const;
  Ideal plus(std::span<const Poly> extra) const;

  bool is_unit(const Limits& lim) const;
  bool contains(const Poly& p, const Limits& lim) const;
  bool contains(const Ideal& o, const Limits& lim) const;
  bool equals(const Ideal& o, const Limits& lim) const;

  std::string to_string() const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<TermOrder, std::shared_ptr<const std::vector<Poly>>> bases;
  };
  VarRing ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_;
};

Poly normal_form(const Poly& p, const Ideal& I, const TermOrder& ord, const Limits& lim);
std::vector<Poly> groebner_basis(const Ideal& I, const TermOrder& ord, const Limits& lim);

Ideal intersect(const Ideal& I, const Ideal& J, const Limits& lim);
Ideal ideal_quotient(const Ideal& I, const Ideal& J, const Limits& lim);
/// I : g^infinity.
Ideal saturate(const Ideal& I, const Poly& g, const Limits& lim);
/// I : J^infinity, as the intersection of the saturations by each generator.
Ideal saturate(const Ideal& I, const Ideal& J, const Limits& lim);
/// I : g^infinity for a random combination g of a basis of J. Equal to
/// I : J^infinity unless g vanishes on a component of V(I) outside V(J),
/// which a generic g does not.
Ideal saturate_generic(const Ideal& I, const Ideal& J, Rng& rng, const Limits& lim);
/// I : J^infinity by iterating ideal quotients until the chain stops.
Ideal saturate_by_quotients(const Ideal& I, const Ideal& J, const Limits& lim);
/// Ideal of the remaining variables (in their original order).
Ideal eliminate(const Ideal& I, std::span<const std::size_t> drop, const Limits& lim);

using Colength = std::optional<std::size_t>;  // nullopt: infinite

Colength colength_global(const Ideal& I, const Limits& lim);

struct LocalColength {
  Colength value;
  /// First k with colength(I + m^k) = colength(I + m^(k+1)) = colength(I + m^(k+2)).
  unsigned stabilized_at = 0;
};

/// Colength of the truncated ideal I + m^k.
std::size_t truncated_colength(const Ideal& I, unsigned k, const Limits& lim);
bool origin_in_variety(const Ideal& I);
/// Certified test: the origin is an isolated point of V(I).
bool origin_isolated(const Ideal& I, const Limits& lim);
LocalColength local_colength_origin(const Ideal& I, const Limits& lim);
int local_dim_origin(const Ideal& I, Context& ctx);
std::size_t distinct_root_count(const Ideal& I, Context& ctx);

/// Helpers shared with higher layers.
Ideal rename_into(const Ideal& I, const VarRing& target, std::span<const std::size_t> index_map);
Ideal restrict_to_zero(const Ideal& I, std::span<const std::size_t> vars);
Ideal maximal_ideal(const VarRing& ring);

}  // namespace leforge
