#pragma once

#include <optional>
#include <string_view>

#include "polyprg/mpoly.hpp"

namespace polyprg {

/// Parses the polynomial text grammar: terms joined by '+'/'-', each term a
/// '*'-separated product of integer coefficients and powers of x1..xN, y, t
/// (power via '^'). Over extension fields a coefficient may also be a
/// parenthesized polynomial in the generator w, as printed by to_string.
/// When `nvars` is absent the arity is the largest x-index used.
/// Throws ParseError carrying the byte offset of the problem.
MPoly parse_poly(std::string_view text, const Field& field, std::optional<unsigned> nvars = std::nullopt);

}  // namespace polyprg
