#pragma once

#include <map>

#include "gslab/expression.hpp"

namespace gslab {

/// Formal partial derivative; every jet coordinate is an independent symbol.
JetExpression partial_derivative(const JetExpression& e, Symbol s);
inline JetExpression partial_derivative(const JetExpression& e, JetCoordinate c) {
  return partial_derivative(e, Symbol::jet(c));
}

/// D_dir e = de/d(dir) + sum over jet coordinates z of (de/dz) * z_dir.
/// Unknown (ansatz) symbols are constants.
JetExpression total_derivative(const JetExpression& e, Direction dir);
JetExpression total_derivative(const JetExpression& e, Direction dir, unsigned times);

/// Simultaneous replacement of symbols by expressions.
JetExpression substitute(const JetExpression& e, const std::map<Symbol, JetExpression>& map);

/// Replaces a dependent variable w by an expression h together with all of its
/// derivatives: w_J -> D_J h. This is how (ubar, vbar) := (phi, psi) and
/// v := u act on a differential function.
JetExpression substitute_prolonged(const JetExpression& e,
                                   const std::map<Dependent, JetExpression>& map);

/// Full Euler operator: sum over multi-indices J of (-D)_J (de/dw_J), over
/// both t- and x-derivatives.
JetExpression euler_operator(const JetExpression& e, Dependent w);

/// x-only Euler operator, t treated as a passive parameter. Expects e to
/// contain no t-derivatives of w.
JetExpression euler_operator_x(const JetExpression& e, Dependent w);

/// Exact evaluation at a point; every symbol of e must be assigned.
Rational evaluate(const JetExpression& e, const std::map<Symbol, Rational>& point);

/// Highest t-order and x-order of coordinates of w present in e.
std::pair<unsigned, unsigned> max_orders(const JetExpression& e, Dependent w);

}  // namespace gslab
