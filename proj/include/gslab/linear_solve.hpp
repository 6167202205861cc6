#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gslab/expression.hpp"

namespace gslab {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Homogeneous linear system over the ansatz coefficients and its nullspace.
struct LinearSolveProblem {
  std::vector<std::string> unknowns;
  RationalMatrix equations;
  RationalMatrix solution_basis;
  std::size_t rank = 0;

  /// Every basis vector solves every equation, the basis is independent,
  /// and rank + dim(basis) == #unknowns.
  bool verify() const;
};

struct Nullspace {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  /// Primitive integer vectors (as rationals), one per free column.
  RationalMatrix basis;
};

/// Fraction-free (Bareiss) row echelon reduction on the integer-scaled rows,
/// pivoting on the entry of smallest magnitude, followed by exact
/// back-substitution for the free columns.
Nullspace nullspace(const RationalMatrix& rows, std::size_t columns);

std::size_t matrix_rank(const RationalMatrix& rows, std::size_t columns);

/// Coordinates y with sum_i y_i basis[i] == target, if target lies in the span.
std::optional<RationalVector> solve_in_span(const RationalMatrix& basis, const RationalVector& target);

/// Splits polynomial residuals that are linear in the unknown symbols
/// k0..k(n-1): every distinct monomial in the remaining symbols yields one
/// linear equation (per residual). Throws std::logic_error on a nonlinear or inhomogeneous term.
RationalMatrix collect_linear_equations(const std::vector<JetExpression>& residuals,
                                        std::size_t unknown_count);

/// Scales v to a primitive integer vector whose first nonzero entry is positive.
RationalVector primitive(const RationalVector& v);

}  // namespace gslab
