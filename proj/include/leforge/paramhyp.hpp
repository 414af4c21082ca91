#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leforge/ideal.hpp"
#include "leforge/lecycles.hpp"

namespace leforge {

/// A polynomial map from a disjoint union of copies of the source space
/// (one per branch) to the target space.
class Parameterization {
 public:
  Parameterization() = default;
  Parameterization(VarRing source, VarRing target, std::vector<std::vector<Poly>> branches);

  const VarRing& source() const { return source_; }
  const VarRing& target() const { return target_; }
  const std::vector<std::vector<Poly>>& branches() const { return branches_; }
  std::size_t source_dim() const { return source_.size(); }
  std::size_t target_dim() const { return target_.size(); }

  /// First source variable t, and every branch has first component exactly t.
  bool has_parameter_shape() const;
  /// True if no component other than the first mentions the parameter.
  bool is_trivial_unfolding() const;
  /// The map at t = t0, with t dropped from source and target.
  Parameterization slice(const Rational& t0) const;

  std::vector<std::vector<std::string>> describe() const;

 private:
  VarRing source_, target_;
  std::vector<std::vector<Poly>> branches_;
};

Poly image_equation(const Parameterization& pi, const Limits& lim);

/// Number of source points (over all branches) mapping to p; 0 if none.
std::size_t fiber_count(const Parameterization& pi, std::span<const Rational> p, Context& ctx);
std::int64_t m_value(const Parameterization& pi, std::span<const Rational> p, Context& ctx);
std::int64_t m_origin(const Parameterization& pi, Context& ctx);

/// Image of a random rational source point has exactly one preimage.
bool generically_one_to_one(const Parameterization& pi, Context& ctx);

/// Index of the source variable that gets doubled: the one variable that is
/// not itself a component. nullopt when there are several, kNoDouble when none.
inline constexpr std::size_t kNoDouble = static_cast<std::size_t>(-1);
std::optional<std::size_t> doubled_variable(const std::vector<Poly>& branch);

/// Divided differences of one branch, in source + (y') ring. Unsaturated.
Ideal double_point_source_ideal(const Parameterization& pi, std::size_t branch = 0);
/// First and second order divided differences, in source + (y', y'') ring.
Ideal triple_point_source_ideal(const Parameterization& pi, std::size_t branch = 0);

/// A locus of pairs of source points with equal image, plus that image.
struct PairLocus {
  Ideal ideal;
  std::vector<Poly> image;  // target components over ideal.ring()
  bool ordered_self = false;  // pairs of one branch, counted in both orders
};

/// Off-diagonal self pairs of every branch and pairs across branches.
std::vector<PairLocus> pair_loci(const Parameterization& pi, const Limits& lim);
Ideal image_of(const PairLocus& pl, const VarRing& target, const Limits& lim);
Ideal pullback(const Ideal& k, const std::vector<Poly>& branch);

struct DComponent {
  Ideal ideal;
  std::int64_t m = 0;    // generic preimage count minus one
  std::int64_t cut = 0;  // local intersection number with the slicing forms
};

struct NdotMultiplicities {
  std::size_t n = 0;  // dimension of the image hypersurface
  std::int64_t m_origin = 0;
  std::int64_t top = 0;  // lambda^{n-1}
  std::map<std::size_t, std::int64_t> lambda;  // the indices that are determined
  std::vector<DComponent> components;

  /// (-1)^{n-1} m(0): the alternating sum of all lambda^i.
  std::int64_t euler() const { return (n % 2 == 1 ? 1 : -1) * m_origin; }
};

NdotMultiplicities ndot_multiplicities(const Parameterization& pi, const CoordTuple& coords, Context& ctx);

/// The polar number of the image of an unfolding with respect to t.
std::int64_t ndot_polar_from_unfolding(const Parameterization& pi, const CoordTuple& coords, const Limits& lim);

/// Sum of m(p) over a zero-dimensional multiple-point set, by fiber counting.
std::int64_t multiple_point_total(const Parameterization& pi, Context& ctx);

}  // namespace leforge
