#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leforge/monomial.hpp"

namespace leforge {

using Rational = mpq_class;

std::string to_string(const Rational& q);

/// Ordered list of distinct variable names. Cheap to copy.
class VarRing {
 public:
  VarRing();
  explicit VarRing(std::vector<std::string> names);

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws PreconditionError for unknown names.
  std::size_t require(std::string_view name) const;

  /// Ring with the listed positions removed.
  VarRing without(std::span<const std::size_t> drop) const;
  /// A fresh name not present in this ring, built from `stem`.
  std::string fresh_name(std::string_view stem) const;

  bool operator==(const VarRing& o) const {
    return names_ == o.names_ || *names_ == *o.names_;
  }
  bool operator!=(const VarRing& o) const { return !(*this == o); }

  static bool valid_name(std::string_view name);

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse polynomial; terms kept in descending grevlex order with nonzero
/// coefficients, which makes the representation canonical.
class Poly {
 public:
  Poly() = default;
  explicit Poly(VarRing ring) : ring_(std::move(ring)) {}

  static Poly constant(VarRing ring, const Rational& c);
  static Poly variable(VarRing ring, std::size_t i);
  static Poly monomial(VarRing ring, const Monomial& m, const Rational& c);
  /// Sorts and merges arbitrary terms.
  static Poly from_terms(VarRing ring, std::vector<Term> terms);

  const VarRing& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  std::size_t size() const { return terms_.size(); }
  unsigned total_degree() const;
  Rational constant_term() const;
  /// Coefficient of the leading term in canonical order.
  const Rational& leading_coeff() const { return terms_.front().coeff; }
  /// True if var i occurs.
  bool involves(std::size_t i) const;
  bool homogeneous_linear() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly pow(unsigned e) const;
  /// Multiply by c * m.
  Poly mul_term(const Monomial& m, const Rational& c) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  friend class PolyBuilder;
  VarRing ring_;
  std::vector<Term> terms_;
};

Poly diff(const Poly& p, std::size_t var);
Poly diff(const Poly& p, std::string_view var);
Rational evaluate(const Poly& p, std::span<const Rational> point);

/// Replace variable `var` by `value` (same ring).
Poly substitute(const Poly& p, std::size_t var, const Poly& value);
/// Replace every variable i by images[i]; images live in a common ring.
Poly compose(const Poly& p, std::span<const Poly> images);
/// Re-home p into `target` sending variable i to target variable index_map[i].
Poly rename_into(const Poly& p, const VarRing& target, std::span<const std::size_t> index_map);
/// Set the listed variables to zero and drop them from the ring.
Poly restrict_to_zero(const Poly& p, std::span<const std::size_t> vars);
/// Divide by the content and make the canonical leading coefficient positive,
/// leaving integer coefficients.
Poly primitive_part(const Poly& p);
/// Exact quotient p / d, throwing if d does not divide p.
Poly exact_divide(const Poly& p, const Poly& d);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  RationalMatrix operator*(const RationalMatrix& o) const;
  bool operator==(const RationalMatrix& o) const = default;
  std::size_t rank() const;
  /// Throws PreconditionError when singular.
  RationalMatrix inverse() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// Row j of M gives the image of variable j: x_j -> sum_i M(j,i) x_i.
Poly linear_change(const Poly& p, const RationalMatrix& m);

struct LinearForm {
  std::vector<Rational> coeffs;

  static LinearForm from_poly(const Poly& p);
  Poly to_poly(const VarRing& ring) const;
  bool is_zero() const;
};

}  // namespace leforge
