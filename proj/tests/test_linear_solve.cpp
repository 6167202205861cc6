#include <doctest.h>

#include "gslab/linear_solve.hpp"
#include "gslab/parser.hpp"

using namespace gslab;

namespace {

RationalVector R(std::initializer_list<Rational> v) { return RationalVector(v); }

bool solves(const RationalMatrix& rows, const RationalVector& x) {
  for (const auto& row : rows) {
    Rational s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    if (s != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("nullspace of a rank-one matrix") {
  // x + 2y + 3z = 0 has a two-dimensional solution space.
  const RationalMatrix rows{R({1, 2, 3}), R({2, 4, 6})};
  const auto ns = nullspace(rows, 3);
  CHECK(ns.rank == 1);
  REQUIRE(ns.basis.size() == 2);
  for (const auto& v : ns.basis) CHECK(solves(rows, v));
  CHECK(ns.basis[0] != ns.basis[1]);
}

TEST_CASE("nullspace with rational entries") {
  // (1/2) x - (1/3) y = 0, z free: basis spans (2, 3, 0) and (0, 0, 1).
  const RationalMatrix rows{R({Rational(1, 2), Rational(-1, 3), 0})};
  const auto ns = nullspace(rows, 3);
  REQUIRE(ns.basis.size() == 2);
  CHECK(solve_in_span(ns.basis, R({2, 3, 0})).has_value());
  CHECK(solve_in_span(ns.basis, R({0, 0, 1})).has_value());
  CHECK_FALSE(solve_in_span(ns.basis, R({1, 0, 0})).has_value());
  for (const auto& v : ns.basis)
    for (const auto& q : v) CHECK(q.get_den() == 1);
}

TEST_CASE("full-rank systems have a trivial nullspace") {
  const RationalMatrix rows{R({2, 1}), R({1, 3})};
  CHECK(nullspace(rows, 2).basis.empty());
  CHECK(matrix_rank(rows, 2) == 2);
  CHECK(nullspace({}, 3).basis.size() == 3);
}

TEST_CASE("rank needs pivoting") {
  const RationalMatrix rows{R({0, 0, 1}), R({0, 5, 1}), R({7, 0, 0}), R({7, 5, 2})};
  CHECK(matrix_rank(rows, 3) == 3);
}

TEST_CASE("coordinates in a span") {
  const RationalMatrix basis{R({1, 0, 1}), R({0, 1, 1})};
  const auto c = solve_in_span(basis, R({2, -3, -1}));
  REQUIRE(c.has_value());
  CHECK(*c == R({2, -3}));
}

TEST_CASE("primitive vectors") {
  CHECK(primitive(R({Rational(1, 2), Rational(-3, 4), 0})) == R({2, -3, 0}));
  CHECK(primitive(R({-4, -6})) == R({2, 3}));
}

TEST_CASE("linear equations are split per residual and per monomial") {
  // Unknowns k0, k1. The two residuals share the monomial 1, which must not
  // merge them: k0 = 0 and k1 = 0 are independent equations.
  const auto k0 = JetExpression::symbol(Symbol::unknown(0));
  const auto k1 = JetExpression::symbol(Symbol::unknown(1));
  const std::vector<JetExpression> residuals{k0 + k0 * parse("u_x"), k1};
  const auto rows = collect_linear_equations(residuals, 2);
  CHECK(rows.size() == 3);
  CHECK(matrix_rank(rows, 2) == 2);
  CHECK(nullspace(rows, 2).basis.empty());
}

TEST_CASE("nonlinear residuals are rejected") {
  const auto k0 = JetExpression::symbol(Symbol::unknown(0));
  CHECK_THROWS(collect_linear_equations({k0 * k0}, 1));
  CHECK_THROWS(collect_linear_equations({parse("u")}, 1));
}

TEST_CASE("solve problem verification") {
  LinearSolveProblem problem;
  problem.unknowns = {"k0", "k1", "k2"};
  problem.equations = {R({1, -1, 0})};
  const auto ns = nullspace(problem.equations, 3);
  problem.solution_basis = ns.basis;
  problem.rank = ns.rank;
  CHECK(problem.verify());
  problem.solution_basis.pop_back();
  CHECK_FALSE(problem.verify());
}
