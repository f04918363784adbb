#pragma once

// Text front end.
//
// Expressions use +, -, *, ^ (non-negative integer exponent), parentheses,
// real literals and the variables x1..xn. Multiplication must be explicit.
// Unary minus binds looser than ^, so -x1^2 is -(x1^2).
//
// Problem files are line oriented:
//
//   dim 2
//   name: example
//   objective: (x1^2 - x2^2)^2 - x2^3
//   constraint: 1 - x1^2 - x2^2      # meaning expr <= 0
//
// '#' starts a comment; blank lines are ignored. `dim` must come first.

#include <cstddef>
#include <string_view>

#include "polycert/polynomial.hpp"
#include "polycert/problem.hpp"

namespace polycert {

struct ParseOptions {
  std::size_t term_cap = kDefaultTermCap;
};

/// Parses and fully expands an expression. Errors report 1-based columns
/// (ParseError) or the term cap (ResourceError).
Polynomial parse_expression(std::string_view source, std::size_t dimension,
                            const ParseOptions& options = {});

/// Parses a problem file. Errors carry the offending line.
Problem parse_problem(std::string_view source, const ParseOptions& options = {});

}  // namespace polycert
