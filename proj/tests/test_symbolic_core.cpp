#include <doctest.h>

#include "gslab/calculus.hpp"
#include "gslab/parser.hpp"
#include "gslab/system.hpp"

using namespace gslab;

namespace {

JetExpression P(const char* text) { return parse(text); }

Symbol jet(Dependent d, unsigned t = 0, unsigned x = 0) { return Symbol::jet({d, t, x}); }

Monomial mono(std::vector<Monomial::Factor> f) { return Monomial::from_factors(std::move(f)); }

}  // namespace

TEST_CASE("parse builds the canonical form") {
  const auto e = P("u_x*v + 2*u");
  const auto expected = JetExpression::from_terms({
      {mono({{jet(Dependent::u, 0, 1), 1}, {jet(Dependent::v), 1}}), 1},
      {mono({{jet(Dependent::u), 1}}), 2},
  });
  CHECK(e == expected);
  CHECK(e.size() == 2);
}

TEST_CASE("parse cancels like terms") {
  CHECK(P("u^2 - u*u").is_zero());
  CHECK(P("u^2 - u*u").to_string() == "0");
}

TEST_CASE("parse expands powers") {
  const auto expected = JetExpression::from_terms({
      {mono({{jet(Dependent::u), 2}}), 1},
      {mono({{jet(Dependent::u), 1}, {jet(Dependent::v), 1}}), 2},
      {mono({{jet(Dependent::v), 2}}), 1},
  });
  CHECK(P("(u+v)^2") == expected);
}

TEST_CASE("parse accepts the full grammar") {
  CHECK(P("u_txxx") == JetExpression::coordinate(Dependent::u, 1, 3));
  CHECK(P("vbar_x") == JetExpression::coordinate(Dependent::vbar, 0, 1));
  CHECK(P("3/6*t") == JetExpression(Rational(1, 2)) * JetExpression::symbol(Symbol::t()));
  CHECK(P("-(x - 1)") == P("1 - x"));
  CHECK(P("u^0") == JetExpression(1));
  CHECK(P(" ( u ) ^ 2 ") == P("u*u"));
}

TEST_CASE("parse reports errors with position") {
  SUBCASE("syntax") {
    try {
      parse("u + * v");
      FAIL("expected error");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseError::Kind::syntax);
      CHECK(e.position() == 4);
    }
  }
  SUBCASE("implicit multiplication") { CHECK_THROWS_AS(parse("2u"), ParseError); }
  SUBCASE("unknown identifier") {
    try {
      parse("u + w");
      FAIL("expected error");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseError::Kind::unknown_identifier);
      CHECK(e.position() == 4);
    }
  }
  SUBCASE("x before t") { CHECK_THROWS_AS(parse("u_xt"), ParseError); }
  SUBCASE("negative exponent") {
    try {
      parse("u^-1");
      FAIL("expected error");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseError::Kind::bad_exponent);
    }
  }
  SUBCASE("fractional exponent") { CHECK_THROWS_AS(parse("u^(1/2)"), ParseError); }
  SUBCASE("division by zero") { CHECK_THROWS_AS(parse("1/0"), ParseError); }
  SUBCASE("unbalanced") { CHECK_THROWS_AS(parse("(u + v"), ParseError); }
  SUBCASE("empty") { CHECK_THROWS_AS(parse(""), ParseError); }
}

TEST_CASE("printing is a parse fixed point") {
  for (const char* text : {"u_x*v + 2*u", "-3/2*t*v^2 + u*u_x + 1", "x^3*ubar_xx - vbar", "0"}) {
    const auto e = P(text);
    CHECK(parse(e.to_string()) == e);
    CHECK(parse(e.to_string()).to_string() == e.to_string());
  }
  CHECK(P("u*2 + 2*u").to_string() == "4*u");
}

TEST_CASE("partial derivatives treat coordinates as independent") {
  CHECK(partial_derivative(P("u^2 + u*v"), jet(Dependent::u)) == P("2*u + v"));
  CHECK(partial_derivative(P("u_x^2"), jet(Dependent::u)).is_zero());
  CHECK(partial_derivative(P("t*x^2"), Symbol::x()) == P("2*t*x"));
}

TEST_CASE("partial derivative of the first flux") {
  // p = 1, a = 1, b = 1: f = (u + v) u + u v v.
  const auto sys = DifferentialSystem::gardner({1, 1, 1, 1});
  CHECK(sys.flux_r() == P("u^2 + u*v + u*v^2"));
  CHECK(partial_derivative(sys.flux_r(), jet(Dependent::u)) == P("2*u + v + v^2"));
}

TEST_CASE("total derivatives") {
  CHECK(total_derivative(P("x*u"), Direction::x) == P("u + x*u_x"));
  CHECK(total_derivative(P("u_x"), Direction::t) == P("u_tx"));
  CHECK(total_derivative(P("u"), Direction::x, 3) == P("u_xxx"));
  CHECK(total_derivative(P("t*v_t"), Direction::t) == P("v_t + t*v_tt"));
  CHECK(total_derivative(P("7"), Direction::x).is_zero());
}

TEST_CASE("substitution is simultaneous") {
  const Symbol u = jet(Dependent::u), v = jet(Dependent::v);
  CHECK(substitute(P("u + v"), {{v, P("u")}}) == P("2*u"));
  CHECK(substitute(P("u*v"), {{u, P("v")}, {v, P("u")}}) == P("u*v"));
  CHECK(substitute(P("ubar*u_t + vbar*v_t"), {{jet(Dependent::ubar), P("u")}, {jet(Dependent::vbar), P("v")}}) ==
        P("u*u_t + v*v_t"));
}

TEST_CASE("setting v = u in the first equation") {
  const auto sys = DifferentialSystem::gardner({1, 0, 1, 1});
  const Symbol v = jet(Dependent::v);
  std::map<Symbol, JetExpression> map{{v, P("u")}};
  for (unsigned k = 1; k <= 3; ++k) map[jet(Dependent::v, 0, k)] = JetExpression::coordinate(Dependent::u, 0, k);
  map[jet(Dependent::v, 1, 0)] = P("u_t");
  CHECK(substitute(sys.F1(), map) == P("u_t + 4*u*u_x + u_xxx"));
}

TEST_CASE("prolonged substitution expands total derivatives") {
  const auto e = P("ubar_x + vbar_t");
  const auto out = substitute_prolonged(e, {{Dependent::ubar, P("t*u")}, {Dependent::vbar, P("x*v")}});
  CHECK(out == P("t*u_x + x*v_t"));
}

TEST_CASE("Euler operator") {
  CHECK(euler_operator(P("1/2*u^2"), Dependent::u) == P("u"));
  CHECK(euler_operator(total_derivative(P("u^3"), Direction::x), Dependent::u).is_zero());
  CHECK(euler_operator(P("u*u_xx"), Dependent::u) == P("2*u_xx"));
  CHECK(euler_operator(P("u*u_t"), Dependent::u).is_zero());
  CHECK(euler_operator(P("ubar*u_t"), Dependent::u) == P("-ubar_t"));
  CHECK(euler_operator_x(P("u_x^2"), Dependent::u) == P("-2*u_xx"));
  CHECK_THROWS(euler_operator_x(P("u_t"), Dependent::u));
}

TEST_CASE("exact evaluation") {
  const std::map<Symbol, Rational> point{{jet(Dependent::u), Rational(1, 2)}, {Symbol::x(), 3}};
  CHECK(evaluate(P("4*u^2*x + 1"), point) == Rational(4));
  CHECK_THROWS(evaluate(P("v"), point));
}
