#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gslab/expression.hpp"
#include "gslab/linear_solve.hpp"
#include "gslab/system.hpp"

namespace gslab {

struct FormalLagrangian {
  JetExpression L;  // ubar*F1 + vbar*F2
};

FormalLagrangian formal_lagrangian(const DifferentialSystem& sys);

struct AdjointSystem {
  JetExpression F1star;
  JetExpression F2star;
};

/// F1* = -dL/du, F2* = -dL/dv with the full (t and x) Euler operator.
AdjointSystem adjoint_system(const DifferentialSystem& sys);

/// ubar_t + r_u ubar_x + s_u vbar_x + c ubar_xxx and the v-analogue.
AdjointSystem adjoint_closed_form(const DifferentialSystem& sys);

/// Replacement (ubar, vbar) := (phi, psi) with phi, psi functions of (t, x, u, v).
struct Substitution {
  JetExpression phi;
  JetExpression psi;
  std::string label;

  /// Throws std::invalid_argument if both vanish or either depends on
  /// anything but t, x, u, v.
  void validate() const;
};

std::pair<ResidualReport, ResidualReport> self_adjointness_residual(const DifferentialSystem& sys,
                                                                    const Substitution& sub);
bool is_self_adjoint_substitution(const DifferentialSystem& sys, const Substitution& sub);

/// Case of the self-adjointness classification: "i" when a = 0 or p = 2,
/// "ii" when b = 0 and p = 1, "iii" otherwise. The first entry is the
/// primary label; further entries list any other case whose hypothesis holds.
std::vector<std::string> substitution_cases(const SystemParameters& params);
std::size_t expected_substitution_dimension(const std::string& case_label);

struct SubstitutionClassification {
  LinearSolveProblem problem;
  std::vector<Monomial> ansatz;
  std::vector<Substitution> basis;
  std::vector<std::string> case_labels;  // empty for general systems
};

/// Generic phi, psi over all point monomials of total degree <= degree
/// (degree >= 2); returns the nullspace of the split residual system.
SubstitutionClassification classify_substitutions(const DifferentialSystem& sys, unsigned degree);

std::optional<RationalVector> substitution_coordinates(const Substitution& sub,
                                                       const std::vector<Monomial>& ansatz);

/// Closed-form substitution of case "i", "ii" or "iii" with constants
/// c1..c5 (unused constants ignored).
Substitution case_substitution(const std::string& case_label, const SystemParameters& params,
                               const std::array<Rational, 5>& constants);

/// Named substitution "<case>.c<k>": the case formula with c_k = 1 and all
/// other constants zero, e.g. "i.c3" is (u, v) and "ii.c2" is (u+v, u+v).
Substitution named_substitution(const std::string& name, const SystemParameters& params);
/// Names valid for the case(s) of these parameters.
std::vector<std::string> named_substitution_names(const SystemParameters& params);

struct StrictReport {
  bool strict = false;
  std::pair<ResidualReport, ResidualReport> residuals;
  /// dr/dv == ds/du, reported for every system.
  bool flux_symmetric = false;
};

/// Strict self-adjointness: (phi, psi) = (u, v) is admissible.
StrictReport strict_self_adjointness(const DifferentialSystem& sys);

}  // namespace gslab
