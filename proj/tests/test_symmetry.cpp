#include <doctest.h>

#include <random>

#include "gslab/calculus.hpp"
#include "gslab/parser.hpp"
#include "gslab/symmetry.hpp"

using namespace gslab;

namespace {

JetExpression P(const char* text) { return parse(text); }

SymmetryGenerator G(const char* T, const char* X, const char* U, const char* V) {
  return {P(T), P(X), P(U), P(V), ""};
}

struct Column {
  int a;
  int b;
  unsigned p;
  std::size_t dimension;
};

const std::vector<Column>& table() {
  static const std::vector<Column> columns{
      {0, 1, 1, 3}, {0, 1, 2, 3}, {0, 1, 3, 3}, {0, 1, 5, 3}, {1, 0, 1, 5}, {1, 0, 2, 4},
      {1, 0, 3, 3}, {1, 0, 5, 3}, {1, 1, 1, 2}, {1, 1, 2, 2}, {1, 1, 3, 2}, {1, 1, 5, 2},
  };
  return columns;
}

}  // namespace

TEST_CASE("characteristics") {
  CHECK(characteristic(named_generator("X3", 1)).Wu == P("-u_x"));
  CHECK(characteristic(named_generator("X3", 1)).Wv == P("-v_x"));
  CHECK(characteristic(named_generator("X2", 1)).Wu == P("-u_t"));
  CHECK(characteristic(named_generator("X2", 1)).Wv == P("-v_t"));
  CHECK(characteristic(named_generator("X1", 1)).Wu == P("-u - 3*t*u_t - x*u_x"));
  CHECK(characteristic(named_generator("X1", 3)).Wv == P("-1/3*v - 3*t*v_t - x*v_x"));
}

TEST_CASE("named generators") {
  CHECK(named_generator("X1", 3) == G("3*t", "x", "-1/3*u", "-1/3*v"));
  CHECK(named_generator("Y1", 2) == G("3*t", "x", "-u", "-v"));
  CHECK(named_generator("Y4", 2) == G("0", "0", "v", "-u"));
  CHECK(named_generator("X5", 1) == G("0", "0", "u", "-u"));
  CHECK_THROWS(named_generator("Z9", 1));
}

TEST_CASE("point generators reject derivative coordinates") {
  CHECK_THROWS(G("u_x", "0", "0", "0").validate());
  CHECK_THROWS(G("0", "0", "ubar", "0").validate());
  CHECK_NOTHROW(G("t*x", "u*v", "1", "x^2").validate());
}

TEST_CASE("translations are symmetries for every admissible case") {
  for (const auto& col : table()) {
    const auto sys = DifferentialSystem::gardner({col.a, col.b, 1, col.p});
    for (const char* name : {"X2", "X3"}) {
      const auto [first, second] = invariance_residual(named_generator(name, col.p), sys);
      CHECK(first.is_zero);
      CHECK(second.is_zero);
    }
  }
}

TEST_CASE("invariance left-hand side has the expanded form") {
  // For T = X = 0 and U = u, V = 0 the condition reads
  // u_t + r_u u_x + r_uu u u_x + r_uv u v_x + c u_xxx.
  const auto sys = DifferentialSystem::gardner({1, 1, 1, 1});
  const auto lhs = invariance_lhs(G("0", "0", "u", "0"), sys, Dependent::u);
  const auto& r = sys.flux_r();
  const Symbol u = Symbol::jet({Dependent::u, 0, 0}), v = Symbol::jet({Dependent::v, 0, 0});
  const auto ru = partial_derivative(r, u);
  const auto expected = P("u_t") + ru * P("u_x") + partial_derivative(ru, u) * P("u*u_x") +
                        partial_derivative(ru, v) * P("u*v_x") + P("u_xxx");
  CHECK(lhs == expected);
}

TEST_CASE("dilation of u alone is not a symmetry") {
  // Oracle: eliminate u_t, v_t numerically at a random rational jet point and
  // compare with the reduced residual at the same point.
  const auto sys = DifferentialSystem::gardner({1, 1, 1, 1});
  const auto g = G("0", "0", "u", "0");
  const auto [first, second] = invariance_residual(g, sys);
  CHECK_FALSE(first.is_zero);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(-9, 9);
  for (int trial = 0; trial < 5; ++trial) {
    std::map<Symbol, Rational> point{{Symbol::t(), pick(rng)}, {Symbol::x(), pick(rng)}};
    for (auto d : {Dependent::u, Dependent::v})
      for (unsigned k = 0; k <= 4; ++k) point[Symbol::jet({d, 0, k})] = Rational(pick(rng)) / (1 + trial);
    const Rational ut = evaluate(P("u_t") - sys.F1(), point);
    const Rational vt = evaluate(P("v_t") - sys.F2(), point);
    point[Symbol::jet({Dependent::u, 1, 0})] = ut;
    point[Symbol::jet({Dependent::v, 1, 0})] = vt;
    const auto lhs = invariance_lhs(g, sys, Dependent::u);
    CHECK(evaluate(lhs, point) == evaluate(first.residual, point));
  }
}

TEST_CASE("classification dimensions at ansatz degrees 1 and 2") {
  for (unsigned degree : {1u, 2u})
    for (const auto& col : table()) {
      CAPTURE(degree);
      CAPTURE(col.a);
      CAPTURE(col.b);
      CAPTURE(col.p);
      const auto sys = DifferentialSystem::gardner({col.a, col.b, 1, col.p});
      const auto cls = solve_determining(sys, degree);
      CHECK(cls.problem.verify());
      CHECK(cls.basis.size() == col.dimension);
      const auto match = match_table(cls, sys);
      CHECK(match.ok);
      CHECK(match.missing.empty());
      for (const auto& g : cls.basis) CHECK(is_symmetry(g, sys));
    }
}

TEST_CASE("table matching names the expected generators") {
  SUBCASE("a = 0, p = 3 contains X1") {
    const auto sys = DifferentialSystem::gardner({0, 1, 1, 3});
    const auto match = match_table(solve_determining(sys, 2), sys);
    CHECK(match.expected.label == "a=0");
    CHECK(match.expected.generators == std::vector<std::string>{"X1", "X2", "X3"});
    CHECK(match.named[0].coordinates.has_value());
  }
  SUBCASE("b = 0, p = 2 contains Y4") {
    const auto sys = DifferentialSystem::gardner({1, 0, 1, 2});
    const auto match = match_table(solve_determining(sys, 2), sys);
    CHECK(match.expected.generators == std::vector<std::string>{"Y1", "X2", "X3", "Y4"});
    CHECK(match.ok);
  }
  SUBCASE("b = 0, p = 1 contains X4 and X5") {
    const auto sys = DifferentialSystem::gardner({1, 0, 1, 1});
    const auto match = match_table(solve_determining(sys, 2), sys);
    CHECK(match.expected.generators == std::vector<std::string>{"Y1", "X2", "X3", "X4", "X5"});
    CHECK(match.ok);
  }
  SUBCASE("mismatches are reported") {
    // Dropping a basis direction loses at least one named generator.
    const auto sys = DifferentialSystem::gardner({0, 1, 1, 1});
    auto cls = solve_determining(sys, 2);
    cls.basis.pop_back();
    cls.problem.solution_basis.pop_back();
    const auto match = match_table(cls, sys);
    CHECK_FALSE(match.ok);
    CHECK_FALSE(match.missing.empty());
  }
}

TEST_CASE("generators outside their column fail") {
  CHECK_FALSE(is_symmetry(named_generator("X4", 1), DifferentialSystem::gardner({0, 1, 1, 1})));
  CHECK_FALSE(is_symmetry(named_generator("Y1", 1), DifferentialSystem::gardner({0, 1, 1, 1})));
  CHECK_FALSE(is_symmetry(named_generator("X1", 1), DifferentialSystem::gardner({1, 1, 1, 1})));
  CHECK_FALSE(is_symmetry(named_generator("Y4", 1), DifferentialSystem::gardner({1, 0, 1, 1})));
}

TEST_CASE("closure of the five-dimensional algebra") {
  const auto sys = DifferentialSystem::gardner({1, 0, 1, 1});
  const auto cls = solve_determining(sys, 2);
  REQUIRE(cls.basis.size() == 5);
  for (std::size_t i = 0; i < cls.basis.size(); ++i)
    for (std::size_t j = i + 1; j < cls.basis.size(); ++j)
      CHECK(is_symmetry(commutator(cls.basis[i], cls.basis[j]), sys));
}

TEST_CASE("scaling preserves symmetry status") {
  const auto sys = DifferentialSystem::gardner({1, 0, 1, 2});
  for (const Rational& k : {Rational(3), Rational(-2, 7)}) {
    CHECK(is_symmetry(named_generator("Y1", 2).scaled(k), sys));
    CHECK_FALSE(is_symmetry(G("0", "0", "u", "0").scaled(k), sys));
  }
}

TEST_CASE("multiplier recovery") {
  const auto sys = DifferentialSystem::gardner({0, 1, 1, 1});
  const auto check = check_multipliers(named_generator("X1", 1), sys);
  // M = U_u - T_t = -1 - 3 and Q = V_v - T_t for X1 at p = 1.
  CHECK(check.M == P("-4"));
  CHECK(check.N.is_zero());
  CHECK(check.P.is_zero());
  CHECK(check.Q == P("-4"));
  CHECK(check.first_order_only);
  CHECK(check.matches_closed_form);
}
