#ifndef NORTHCOTT_POLY_PARSE_HPP
#define NORTHCOTT_POLY_PARSE_HPP

#include <string_view>

#include "northcott/int_poly.hpp"

namespace northcott {

/// Quotient of two integer polynomials, as written in map expressions.
struct RationalFunction {
    IntPoly num;
    IntPoly den;
};

/*
 * Text format shared by every command-line entry point:
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := unary (('*' | '/')? unary)*      juxtaposition multiplies
 *   unary   := ('+' | '-') unary | power
 *   power   := primary ('^' integer)?
 *   primary := integer | 'x' | '(' expr ')'
 *
 * Coefficients must be integers; decimals, other identifiers and stray
 * characters raise ParseError carrying the 0-based offset.
 */
IntPoly parse_polynomial(std::string_view text);

/// Same grammar with '/' enabled. The result is reduced (gcd 1) with a
/// positive leading coefficient in the denominator.
RationalFunction parse_rational_function(std::string_view text);

/// num/den in lowest terms, joint content 1, lc(den) > 0. DomainError
/// when den is zero.
RationalFunction reduce_fraction(IntPoly num, IntPoly den);

}  // namespace northcott

#endif  // NORTHCOTT_POLY_PARSE_HPP
