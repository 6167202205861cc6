#include <doctest.h>

#include <random>

#include "gslab/adjoint.hpp"
#include "gslab/calculus.hpp"
#include "gslab/parser.hpp"
#include "gslab/random_expr.hpp"

using namespace gslab;

namespace {

JetExpression P(const char* text) { return parse(text); }

Substitution S(const char* phi, const char* psi) { return {P(phi), P(psi), ""}; }

bool admissible(const SystemParameters& params, const Substitution& sub) {
  return is_self_adjoint_substitution(DifferentialSystem::gardner(params), sub);
}

}  // namespace

TEST_CASE("formal Lagrangian") {
  const auto sys = DifferentialSystem::gardner({1, 0, 1, 1});
  CHECK(formal_lagrangian(sys).L == P("ubar") * sys.F1() + P("vbar") * sys.F2());
}

TEST_CASE("adjoint equations") {
  SUBCASE("a = 1, b = 0, p = 1") {
    const auto adj = adjoint_system(DifferentialSystem::gardner({1, 0, 1, 1}));
    CHECK(adj.F1star == P("ubar_t + (2*u + v)*ubar_x + v*vbar_x + ubar_xxx"));
  }
  SUBCASE("a = 0, b = 1, p = 1") {
    const auto adj = adjoint_system(DifferentialSystem::gardner({0, 1, 1, 1}));
    CHECK(adj.F1star == P("ubar_t + v^2*ubar_x + 2*u*v*vbar_x + ubar_xxx"));
    CHECK(adj.F2star == P("vbar_t + 2*u*v*ubar_x + u^2*vbar_x + vbar_xxx"));
  }
  SUBCASE("Euler form agrees with the closed form") {
    for (unsigned p : {1u, 2u, 3u}) {
      const auto sys = DifferentialSystem::gardner({Rational(1, 2), 3, -2, p});
      const auto adj = adjoint_system(sys);
      const auto closed = adjoint_closed_form(sys);
      CHECK(adj.F1star == closed.F1star);
      CHECK(adj.F2star == closed.F2star);
      CHECK(adj.F1star.coefficient(Monomial::from_factors({{Symbol::jet({Dependent::ubar, 1, 0}), 1}})) == 1);
    }
  }
}

TEST_CASE("listed substitutions are admissible") {
  CHECK(admissible({1, 1, 1, 1}, S("1", "1")));
  CHECK(admissible({0, 1, 1, 1}, S("u", "v")));
  CHECK(admissible({1, 0, 1, 1}, S("2*t*(u+v) - x", "2*t*(u+v) - x")));
  CHECK(admissible({1, 0, 1, 1}, S("u + v", "u + v")));
  CHECK(admissible({1, 1, 1, 2}, S("u + 3", "v - 1")));
}

TEST_CASE("inadmissible substitutions") {
  CHECK_FALSE(admissible({1, 0, 1, 1}, S("u", "v")));
  CHECK_FALSE(admissible({1, 1, 1, 1}, S("u + v", "u + v")));
  CHECK_FALSE(admissible({0, 1, 1, 1}, S("x", "x")));
  CHECK_THROWS(S("0", "0").validate());
  CHECK_THROWS(S("u_x", "1").validate());
}

TEST_CASE("case labels") {
  CHECK(substitution_cases({0, 1, 1, 1}) == std::vector<std::string>{"i"});
  CHECK(substitution_cases({1, 1, 1, 2}) == std::vector<std::string>{"i"});
  CHECK(substitution_cases({1, 0, 1, 1}) == std::vector<std::string>{"ii"});
  CHECK(substitution_cases({1, 1, 1, 3}) == std::vector<std::string>{"iii"});
  CHECK(substitution_cases({1, 0, 1, 2}) == std::vector<std::string>{"i"});
}

TEST_CASE("classification dimensions") {
  struct Row {
    int a, b;
    unsigned p;
    std::string label;
    std::size_t dimension;
  };
  for (const auto& row : std::vector<Row>{{0, 1, 1, "i", 3},
                                          {1, 0, 1, "ii", 4},
                                          {1, 1, 1, "iii", 2},
                                          {1, 1, 2, "i", 3},
                                          {1, 1, 3, "iii", 2},
                                          {0, 1, 5, "i", 3},
                                          {1, 0, 3, "iii", 2}}) {
    CAPTURE(row.a);
    CAPTURE(row.b);
    CAPTURE(row.p);
    const auto sys = DifferentialSystem::gardner({row.a, row.b, 1, row.p});
    const auto cls = classify_substitutions(sys, 2);
    CHECK(cls.problem.verify());
    CHECK(cls.case_labels.front() == row.label);
    CHECK(cls.basis.size() == row.dimension);
    CHECK(expected_substitution_dimension(row.label) == row.dimension);
    for (const auto& sub : cls.basis) CHECK(is_self_adjoint_substitution(sys, sub));
    for (const auto& name : named_substitution_names({row.a, row.b, 1, row.p})) {
      const auto sub = named_substitution(name, {row.a, row.b, 1, row.p});
      CHECK(is_self_adjoint_substitution(sys, sub));
      const auto coords = substitution_coordinates(sub, cls.ansatz);
      REQUIRE(coords.has_value());
      CHECK(solve_in_span(cls.problem.solution_basis, *coords).has_value());
    }
  }
}

TEST_CASE("named substitutions") {
  const SystemParameters ii{1, 0, 1, 1};
  CHECK(named_substitution("ii.c1", ii).phi == P("2*t*u + 2*t*v - x"));
  CHECK(named_substitution("ii.c2", ii).psi == P("u + v"));
  CHECK(named_substitution("i.c3", {0, 1, 1, 1}).phi == P("u"));
  CHECK(named_substitution("iii.c5", {1, 1, 1, 3}).psi == P("1"));
  CHECK_THROWS(named_substitution("ii.c1", {1, 1, 1, 1}));
  CHECK_THROWS(named_substitution("i.c9", {0, 1, 1, 1}));
}

TEST_CASE("strict self-adjointness table") {
  for (unsigned p : {1u, 2u, 3u, 5u})
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{1, 1}}) {
      CAPTURE(p);
      CAPTURE(a);
      CAPTURE(b);
      const auto report = strict_self_adjointness(DifferentialSystem::gardner({a, b, 1, p}));
      CHECK(report.strict == (a == 0 || p == 2));
      CHECK(report.flux_symmetric == (a == 0 || p == 2));
    }
}

TEST_CASE("strictness follows flux symmetry for random fluxes") {
  std::mt19937_64 rng(seed_from_env());
  int symmetric = 0;
  for (int k = 0; k < 30; ++k) {
    JetExpression r, s;
    if (k % 2 == 0) {
      const auto h = random_flux(rng, 5);
      r = partial_derivative(h, Symbol::jet({Dependent::u, 0, 0}));
      s = partial_derivative(h, Symbol::jet({Dependent::v, 0, 0}));
    } else {
      r = random_flux(rng, 4);
      s = random_flux(rng, 4);
    }
    const auto report = strict_self_adjointness(DifferentialSystem::general(r, s, Rational(k % 3 + 1)));
    CHECK(report.strict == report.flux_symmetric);
    symmetric += report.flux_symmetric ? 1 : 0;
  }
  CHECK(symmetric >= 15);
  CHECK(symmetric < 30);
}

TEST_CASE("basis substitutions are free of x except in case ii") {
  for (unsigned p : {1u, 2u, 3u})
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{1, 1}}) {
      const SystemParameters params{a, b, 1, p};
      const auto cls = classify_substitutions(DifferentialSystem::gardner(params), 2);
      const bool case_ii = cls.case_labels.front() == "ii";
      for (const auto& sub : cls.basis) {
        const auto dphi = partial_derivative(sub.phi, Symbol::x());
        const auto dpsi = partial_derivative(sub.psi, Symbol::x());
        if (case_ii) {
          CHECK(dphi == dpsi);
          CHECK(dphi.is_constant());
        } else {
          CHECK(dphi.is_zero());
          CHECK(dpsi.is_zero());
        }
      }
    }
}

TEST_CASE("strict substitution returns the original system") {
  for (unsigned p : {1u, 2u})
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 1}}) {
      const auto sys = DifferentialSystem::gardner({a, b, 1, p});
      if (!strict_self_adjointness(sys).strict) continue;
      const auto adj = adjoint_system(sys);
      const std::map<Dependent, JetExpression> strict{{Dependent::ubar, P("u")}, {Dependent::vbar, P("v")}};
      CHECK(reduce_mod_system(substitute_prolonged(adj.F1star, strict), sys).is_zero);
      CHECK(substitute_prolonged(adj.F1star, strict) == sys.F1());
      CHECK(substitute_prolonged(adj.F2star, strict) == sys.F2());
    }
}
