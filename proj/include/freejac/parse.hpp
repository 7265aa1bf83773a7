#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freejac/free_poly_map.hpp"

namespace freejac {

/// A parsed map together with the variable names that bind its indices.
struct ParsedMap {
    std::vector<std::string> names;
    FreePolyMap map;
};

/// Grammar (whitespace insignificant, UTF-8 input):
///
///   map     := ["vars" ident ("," ident)* ";"] "(" expr ("," expr)* ")"
///   expr    := ["-"] term (("+"|"-") term)*
///   term    := factor ("*" factor)*
///   factor  := atom ["^" uint]
///   atom    := ident | literal | "(" expr ")" | "[" expr "," expr "]"
///
/// Literals are nonnegative reals or pure-imaginary values: 3, 2.5, 1e-5,
/// i, 3i. Complex coefficients with both parts are written as parenthesized
/// sums, e.g. (2+3i). Commutators expand as [A,B] = A*B - B*A. The optional
/// vars header fixes variable order; without it, variables are numbered in
/// order of first appearance. "vars" and "i" are reserved words.
///
/// Errors carry line/column positions under data.line / data.column.
ParsedMap parse_source(const std::string& text);

/// parse_source with the names dropped.
FreePolyMap parse_map(const std::string& text);

/// Convenience: parse a single polynomial (an expression without the tuple
/// parentheses is also accepted when it contains no top-level comma).
FreePoly parse_poly(const std::string& text);

/// Default variable names: X, Y, Z, W for up to four variables, else X1..XN.
std::vector<std::string> default_names(int num_vars);

/// Canonical text for one polynomial: terms in graded-lex word order, exact
/// shortest-round-trip decimals, explicit '*' between every factor. With
/// compress_powers, runs of one variable print as X^k instead of X*X*...
std::string print_poly(const FreePoly& p, const std::vector<std::string>& names,
                       bool compress_powers = false);

/// Canonical text for a map, always including the vars header so that the
/// variable count survives the round trip: parse_map(print_map(P)) == P.
std::string print_map(const FreePolyMap& p, const std::vector<std::string>& names,
                      bool compress_powers = false);
std::string print_map(const FreePolyMap& p, bool compress_powers = false);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace freejac
