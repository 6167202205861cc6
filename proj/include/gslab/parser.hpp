#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gslab/expression.hpp"

namespace gslab {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_identifier, bad_exponent };

  ParseError(Kind kind, std::size_t position, const std::string& message);

  Kind kind() const { return kind_; }
  /// Zero-based byte offset into the input.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

/// Parses the expression grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' integer)?
///   primary := integer | integer '/' integer | identifier | '(' expr ')'
/// Identifiers are t, x, u, v, ubar, vbar with optional derivative suffix
/// "_t...x..." (t's first). Implicit multiplication is rejected.
JetExpression parse(std::string_view text);

}  // namespace gslab
