#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stokeskit/operator.hpp"

namespace stokeskit {

using Bindings = std::map<std::string, GaussianRational>;

/// Parses an operator expression and expands it with the noncommutative product.
///
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := ('+'|'-') unary | power
///   power  := base ('^' exponent)?
///   base   := 'delta' | 'z' | 'i' | number | identifier | '(' expr ')'
///
/// Numbers are decimal rationals with an optional trailing `i` ("2", "0.25", "3i");
/// `i` alone is the imaginary unit. Division and negative exponents are only allowed
/// for δ-free factors. Throws ParseError (with a position) or DomainError.
DiffOperator parse_operator(std::string_view text, const Bindings& bindings = {});

/// Parses a constant expression ("1/3", "-2+i/2", "mu+1") to a Gaussian rational.
GaussianRational parse_scalar(std::string_view text, const Bindings& bindings = {});

/// Comma-separated list of constant expressions.
std::vector<GaussianRational> parse_scalar_list(std::string_view text, const Bindings& bindings = {});

}  // namespace stokeskit
