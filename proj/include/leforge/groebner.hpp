#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "leforge/poly.hpp"

namespace leforge {

enum class OrderKind : std::uint8_t {
  Lex,
  GrevLex,
  /// Grevlex on the first `block` variables, ties broken by grevlex on the rest.
  Block,
  /// Negative degree, then reverse lexicographic. Not a well-order; used only
  /// in m-adically truncated computations.
  LocalDegRevLex,
};

struct TermOrder {
  OrderKind kind = OrderKind::GrevLex;
  std::size_t block = 0;

  static TermOrder lex() { return {OrderKind::Lex, 0}; }
  static TermOrder grevlex() { return {OrderKind::GrevLex, 0}; }
  static TermOrder elimination(std::size_t block) { return {OrderKind::Block, block}; }
  static TermOrder local() { return {OrderKind::LocalDegRevLex, 0}; }

  int compare(const Monomial& a, const Monomial& b) const;
  bool operator==(const TermOrder&) const = default;
  auto operator<=>(const TermOrder&) const = default;
};

struct Limits {
  unsigned max_degree = 64;
  std::size_t max_basis = 5000;
  std::size_t max_pairs = 500000;
  unsigned k_max = 40;
};

/// Reduced Groebner basis, monic, sorted by increasing leading monomial.
/// Elements are returned as ordinary (canonically stored) polynomials.
std::vector<Poly> groebner_basis(std::span<const Poly> gens, const TermOrder& ord, const Limits& lim);

/// Reduced standard basis of I + m^k under the local order, computed in
/// Q[x]/m^k. Every returned polynomial has all terms of degree < k.
std::vector<Poly> truncated_local_basis(std::span<const Poly> gens, unsigned k, const Limits& lim);

/// Leading monomial of p under ord (p nonzero).
Monomial leading_monomial(const Poly& p, const TermOrder& ord);

/// Full remainder of p by `basis` (assumed a Groebner basis under ord).
Poly reduce(const Poly& p, std::span<const Poly> basis, const TermOrder& ord);

/// Number of monomials outside the monomial ideal generated by `leads`,
/// restricted to degree < degree_bound when that bound is nonzero.
/// Returns nullopt if unbounded.
std::optional<std::size_t> count_standard_monomials(std::span<const Monomial> leads, std::size_t nvars,
                                                    unsigned degree_bound = 0);
/// The standard monomials themselves (requires a finite staircase).
std::vector<Monomial> standard_monomials(std::span<const Monomial> leads, std::size_t nvars);

}  // namespace leforge
