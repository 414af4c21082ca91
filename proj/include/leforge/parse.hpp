#pragma once

#include <string_view>

#include "leforge/poly.hpp"

namespace leforge {

/// Grammar: sums and differences of products of powers of literals,
/// variables and parenthesised expressions. `/` divides by a nonzero
/// constant, so `3/4` and `x/2` both parse.
Poly parse_poly(std::string_view text, const VarRing& ring);
LinearForm parse_linear_form(std::string_view text, const VarRing& ring);
Rational parse_rational(std::string_view text);

}  // namespace leforge
