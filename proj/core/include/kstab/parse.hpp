#pragma once

#include <string>
#include <string_view>

#include "kstab/polynomial.hpp"
#include "kstab/variables.hpp"

namespace kstab {

/// Parses an expression over +, -, *, ^, integer and rational literals,
/// parentheses and declared variable names. Whitespace-insensitive.
///
///   expr   := ('+'|'-')? term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' uint)?
///   base   := rational | ident | '(' expr ')'
///   rational := uint ('/' uint)?
///
/// All arithmetic is exact. Errors carry the byte offset.
Polynomial parse_polynomial(std::string_view src, const VariableTable& vars);

/// Deterministic canonical text; parse_polynomial(format_polynomial(f)) == f.
std::string format_polynomial(const Polynomial& f, const VariableTable& vars);

} // namespace kstab
