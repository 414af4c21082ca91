#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leforge/lecycles.hpp"
#include "leforge/paramhyp.hpp"
#include "leforge/verdict.hpp"

namespace leforge {

/// Result of one verification task: checked identities plus the numbers behind them.
struct Report {
  std::string task;
  Verdicts verdicts;
  std::map<std::string, std::int64_t> values;
  std::vector<std::string> notes;

  bool pass() const { return all_pass(verdicts); }
};

/// Default slice parameters, tried in order.
std::vector<Rational> default_slice_params();

struct ShapeCheck {
  bool ok = false;
  std::string diagnostic;
};

/// First component is t and the t = 0 map is generically one-to-one.
ShapeCheck check_unfolding_shape(const Parameterization& pi, Context& ctx);

/// Coordinates (t, z) on a total space, split into t and coordinates on V(t).
struct SliceCoords {
  std::size_t t = 0;  // index of the parameter variable
  CoordTuple total;
  CoordTuple slice;  // on the ring without t
};
SliceCoords split_parameter(const CoordTuple& coords);

/// f restricted to t = t0, over the ring without t.
Poly fiber_at(const Poly& f, std::size_t t, const Rational& t0);

/// Primary components of I that lie on V(f): I : (I : f^inf)^inf.
Ideal part_on(const Ideal& I, const Poly& f, const Limits& lim);

/// Immersion whose multiple points are all double, with every pair of
/// preimages a simple point of the pair locus.
bool is_nodal(const Parameterization& pi, Context& ctx);

/// Sum of m(p) over a nodal plane-curve slice, from pair-ideal colengths.
std::int64_t nodal_multiple_total(const Parameterization& pi, Context& ctx);

Report verify_milnor_formula(const Parameterization& pi, Context& ctx,
                             const std::vector<Rational>& params = default_slice_params());
Report verify_eq2_curve(const Parameterization& pi, const Rational& t0, Context& ctx);
/// verify_eq2_curve at the first two admissible parameters, plus agreement of the two.
Report verify_eq2_windows(const Parameterization& pi, Context& ctx,
                          const std::vector<Rational>& params = default_slice_params());

Report verify_ipaimplies2(const Parameterization& pi, const CoordTuple& coords, Context& ctx);

/// Hypersurface version: f over a ring containing t, coords[0] = t.
Report verify_thm_main(const Poly& f, const CoordTuple& coords, Context& ctx,
                       const std::vector<Rational>& params = default_slice_params());
Report verify_thm_main(const Parameterization& pi, const CoordTuple& coords, Context& ctx,
                       const std::vector<Rational>& params = default_slice_params());

struct SurfaceInvariants {
  std::int64_t T = 0, C = 0, delta = 0;
  std::int64_t P = 0;    // (polar curve . V(t))_0
  std::int64_t P_z = 0;  // (polar curve . V(z))_0, reported for comparison
  std::optional<std::int64_t> chi_link;  // from the ICIS route
  std::int64_t T_slice = 0, C_slice = 0;  // the same counts read off a stable slice
  Rational t0;
  std::optional<Ideal> sigma;  // ideal of the double-point surface, absent if empty
  std::optional<Ideal> polar_curve;
  std::vector<std::string> notes;
};

/// pi: (t, x, y) -> (t, x, p, q) with coords (t, z, ...) on the target.
SurfaceInvariants surface_invariants(const Parameterization& pi, const CoordTuple& coords, Context& ctx,
                                     const std::vector<Rational>& params = default_slice_params());
Report verify_thm_surface(const Parameterization& pi, const CoordTuple& coords, Context& ctx,
                          const std::vector<Rational>& params = default_slice_params());
Report verify_cor_surface(const Parameterization& pi, const CoordTuple& coords, Context& ctx,
                          const std::vector<Rational>& params = default_slice_params());

/// Euler characteristic of the Milnor fibre of ell on a surface V(g1, g2) in
/// 4-space with an isolated singular point, as 1 - mu(V(g1, g2, ell)).
std::int64_t icis_complex_link_euler(const Ideal& I, const LinearForm& ell, Context& ctx);

/// Milnor number of a curve V(h1, h2) in 3-space, by the Le-Greuel formula.
std::int64_t icis_curve_milnor(const Poly& h1, const Poly& h2, Context& ctx);

}  // namespace leforge
