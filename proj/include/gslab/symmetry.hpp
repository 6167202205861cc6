#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gslab/expression.hpp"
#include "gslab/linear_solve.hpp"
#include "gslab/system.hpp"

namespace gslab {

/// Point vector field T d/dt + X d/dx + U d/du + V d/dv.
struct SymmetryGenerator {
  JetExpression T;
  JetExpression X;
  JetExpression U;
  JetExpression V;
  std::string label;

  /// Throws std::invalid_argument if a coefficient involves a derivative
  /// coordinate or a nonlocal variable.
  void validate() const;

  const JetExpression& component(std::size_t i) const;
  SymmetryGenerator scaled(const Rational& k) const;
};

SymmetryGenerator operator+(const SymmetryGenerator& a, const SymmetryGenerator& b);
bool operator==(const SymmetryGenerator& a, const SymmetryGenerator& b);

/// Evolutionary form of a point generator.
struct Characteristic {
  JetExpression Wu;
  JetExpression Wv;

  const JetExpression& of(Dependent w) const { return w == Dependent::u ? Wu : Wv; }
};

Characteristic characteristic(const SymmetryGenerator& g);

/// Left-hand side of the invariance condition for equation `w` (u: first
/// equation, v: second), before reduction.
JetExpression invariance_lhs(const SymmetryGenerator& g, const DifferentialSystem& sys, Dependent w);

/// Both invariance conditions reduced modulo the system. g is a symmetry iff
/// both residuals vanish.
std::pair<ResidualReport, ResidualReport> invariance_residual(const SymmetryGenerator& g,
                                                              const DifferentialSystem& sys);

bool is_symmetry(const SymmetryGenerator& g, const DifferentialSystem& sys);

/// Compares the multipliers recovered from the reduction trace with
/// M = U_u - T_t, N = U_v, P = V_u, Q = V_v - T_t.
struct MultiplierCheck {
  bool first_order_only = false;
  bool matches_closed_form = false;
  JetExpression M, N, P, Q;
};
MultiplierCheck check_multipliers(const SymmetryGenerator& g, const DifferentialSystem& sys);

/// Monomials of total degree <= degree in (t, x, u, v), increasing deglex.
std::vector<Monomial> point_monomials(unsigned degree);

struct SymmetryClassification {
  LinearSolveProblem problem;
  std::vector<Monomial> ansatz;  // per-component monomial list
  std::vector<SymmetryGenerator> basis;
};

/// Generic polynomial ansatz of the given degree for T, X, U, V; collects the
/// split invariance conditions into a linear system and returns its nullspace.
SymmetryClassification solve_determining(const DifferentialSystem& sys, unsigned degree);

/// Coordinates of g in the ansatz (T block, X block, U block, V block), or
/// nullopt if g uses a monomial outside the ansatz.
std::optional<RationalVector> ansatz_coordinates(const SymmetryGenerator& g,
                                                 const std::vector<Monomial>& ansatz);
SymmetryGenerator generator_from_coordinates(const RationalVector& coords,
                                             const std::vector<Monomial>& ansatz);

/// Named generators: X1, Y1, X2, X3, X4, Y4, X5. X1 and Y1 depend on p.
SymmetryGenerator named_generator(const std::string& name, unsigned p);
std::vector<std::string> named_generator_names();

/// Column of the classification table that applies to the parameters, with
/// the generators expected there.
struct TableCase {
  std::string label;  // "a=0", "b=0", "ab!=0"
  std::vector<std::string> generators;
};
TableCase table_case(const SystemParameters& params);

struct NamedCoordinates {
  std::string name;
  std::optional<RationalVector> coordinates;  // in the computed basis
};

struct TableMatch {
  TableCase expected;
  std::size_t computed_dimension = 0;
  std::vector<NamedCoordinates> named;
  std::vector<std::string> missing;
  /// computed_dimension - expected dimension when positive.
  std::size_t extra_directions = 0;
  bool ok = false;
};

TableMatch match_table(const SymmetryClassification& cls, const DifferentialSystem& sys);

/// Lie bracket of two point vector fields.
SymmetryGenerator commutator(const SymmetryGenerator& a, const SymmetryGenerator& b);

}  // namespace gslab
