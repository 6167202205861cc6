#include <doctest.h>

#include "gslab/calculus.hpp"
#include "gslab/conservation.hpp"
#include "gslab/parser.hpp"

using namespace gslab;

namespace {

JetExpression P(const char* text) { return parse(text); }

SystemParameters params(int a, int b, unsigned p) { return {a, b, 1, p}; }

// Oracle for equivalence: Ct1 - lambda Ct2, with t-derivatives eliminated,
// has vanishing x-variational derivatives in u and v.
bool differ_by_trivial(const ConservedVector& cv1, const ConservedVector& cv2, const Rational& lambda,
                       const DifferentialSystem& sys) {
  const auto diff = reduce_mod_system(cv1.Ct - lambda * cv2.Ct, sys).residual;
  return euler_operator_x(diff, Dependent::u).is_zero() && euler_operator_x(diff, Dependent::v).is_zero();
}

}  // namespace

TEST_CASE("direct integration gives the mass laws") {
  const auto sys = DifferentialSystem::gardner(params(1, 0, 1));
  const auto [mu, mv] = direct_integration_vectors(sys);
  CHECK(mu.Ct == P("u"));
  CHECK(mu.Cx == sys.flux_r() + P("u_xx"));
  CHECK(mv.Cx == sys.flux_s() + P("v_xx"));
  CHECK(divergence_residual(mu, sys).is_zero);
  CHECK(divergence_residual(mv, sys).is_zero);
}

TEST_CASE("divergence of a non-conserved vector") {
  const auto sys = DifferentialSystem::gardner(params(1, 0, 1));
  const ConservedVector cv{P("u"), P("0"), ""};
  const auto res = divergence_residual(cv, sys);
  CHECK_FALSE(res.is_zero);
  CHECK(res.residual == -total_derivative(sys.flux_r() + P("u_xx"), Direction::x));
}

TEST_CASE("reference vectors are conserved") {
  for (unsigned p : {1u, 2u, 3u, 5u}) {
    CAPTURE(p);
    const auto sp = params(0, 1, p);
    CHECK(divergence_residual(reference_vector("i", sp), DifferentialSystem::gardner(sp)).is_zero);
  }
  CHECK(divergence_residual(reference_vector("ii.a", params(1, 0, 1)),
                            DifferentialSystem::gardner(params(1, 0, 1)))
            .is_zero);
  CHECK(divergence_residual(reference_vector("ii.b", params(1, 0, 2)),
                            DifferentialSystem::gardner(params(1, 0, 2)))
            .is_zero);
}

TEST_CASE("reference vectors check their hypotheses") {
  CHECK_THROWS_AS(reference_vector("i", params(1, 0, 1)), ParameterError);
  CHECK_THROWS_AS(reference_vector("ii.a", params(1, 0, 2)), ParameterError);
  CHECK_THROWS_AS(reference_vector("ii.b", params(1, 1, 2)), ParameterError);
  CHECK_THROWS(reference_vector("iv", params(0, 1, 1)));
  CHECK(reference_vector_cases(params(0, 1, 1)) == std::vector<std::string>{"i"});
  CHECK(reference_vector_cases(params(1, 0, 1)) == std::vector<std::string>{"ii.a"});
  CHECK(reference_vector_cases(params(1, 1, 3)).empty());
}

TEST_CASE("Ibragimov vector for a translation") {
  // X3 = d/dx with (1, 1): density -(u_x + v_x), a total x-derivative.
  const auto sys = DifferentialSystem::gardner(params(1, 1, 1));
  const auto cv = ibragimov_vector(named_generator("X3", 1), {P("1"), P("1"), ""}, sys);
  CHECK(cv.Ct == P("-u_x - v_x"));
  CHECK(divergence_residual(cv, sys).is_zero);
  CHECK(density_signature(cv, sys).is_zero());
}

TEST_CASE("Ibragimov vector for time translation") {
  const auto sys = DifferentialSystem::gardner(params(0, 1, 1));
  const auto cv = ibragimov_vector(named_generator("X2", 1), {P("u"), P("v"), ""}, sys);
  CHECK(divergence_residual(cv, sys).is_zero);
  // The density reduces to u (r_x + u_xxx) + v (s_x + v_xxx), an x-divergence
  // because r_v = s_u when a = 0.
  CHECK(density_signature(cv, sys).is_zero());
}

TEST_CASE("preconditions") {
  const auto sys = DifferentialSystem::gardner(params(1, 0, 1));
  CHECK_THROWS_AS(ibragimov_vector(named_generator("X1", 1), {P("u + v"), P("u + v"), ""}, sys),
                  PreconditionError);
  CHECK_THROWS_AS(ibragimov_vector(named_generator("Y1", 1), {P("u"), P("v"), ""}, sys), PreconditionError);
  CHECK_NOTHROW(ibragimov_vector_unchecked(named_generator("Y1", 1), {P("u"), P("v"), ""}, sys));
}

TEST_CASE("every symmetry and admissible substitution gives a conservation law") {
  for (unsigned p : {1u, 2u, 3u})
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{1, 1}}) {
      const auto sp = params(a, b, p);
      const auto sys = DifferentialSystem::gardner(sp);
      for (const auto& name : named_substitution_names(sp)) {
        const auto sub = named_substitution(name, sp);
        for (const char* gen : {"X2", "X3"}) {
          CAPTURE(p);
          CAPTURE(a);
          CAPTURE(name);
          CAPTURE(gen);
          CHECK(divergence_residual(ibragimov_vector(named_generator(gen, p), sub, sys), sys).is_zero);
        }
      }
    }
}

TEST_CASE("density signatures") {
  const auto sys = DifferentialSystem::gardner(params(1, 0, 1));
  const auto sig = density_signature(P("3*(u+v)^2"), sys);
  CHECK(sig.sig_u == P("6*u + 6*v"));
  CHECK(sig.sig_v == P("6*u + 6*v"));
  CHECK(density_signature(P("u*u_x + x*v_xx"), sys).is_zero());
  CHECK(density_signature(P("u_x^2"), sys).sig_u == P("-2*u_xx"));
}

TEST_CASE("equivalence up to trivial vectors") {
  const auto sys = DifferentialSystem::gardner(params(1, 0, 1));
  const auto [mu, mv] = direct_integration_vectors(sys);
  const auto shifted = add_trivial(mu, P("x*u^2 + t*v_x"), sys);
  CHECK(divergence_residual(shifted, sys).is_zero);
  CHECK(equivalent_up_to_trivial(shifted, mu, sys) == Rational(1));

  ConservedVector scaled{3 * mu.Ct, 3 * mu.Cx, ""};
  CHECK(equivalent_up_to_trivial(scaled, mu, sys) == Rational(3));
  CHECK_FALSE(equivalent_up_to_trivial(mu, mv, sys).has_value());

  const ConservedVector trivial{P("u_x"), P("-u_t"), ""};
  CHECK(equivalent_up_to_trivial(trivial, trivial, sys) == Rational(1));
  CHECK_FALSE(equivalent_up_to_trivial(trivial, mu, sys).has_value());
}

TEST_CASE("constructed vectors match the reference vectors") {
  struct Pin {
    int a, b;
    unsigned p;
    std::string case_label, generator;
    Rational lambda;
  };
  for (const auto& pin : std::vector<Pin>{{0, 1, 1, "i", "X1", Rational(-1, 4)},
                                          {0, 1, 3, "i", "X1", Rational(1, 24)},
                                          {0, 1, 5, "i", "X1", Rational(1, 20)},
                                          {0, 2, 1, "i", "X1", Rational(-1, 4)},
                                          {1, 0, 1, "ii.a", "Y1", Rational(-1, 2)},
                                          {1, 0, 1, "ii.a", "X2", Rational(1, 3)},
                                          {1, 0, 2, "ii.b", "Y1", Rational(-1, 4)}}) {
    CAPTURE(pin.case_label);
    CAPTURE(pin.generator);
    CAPTURE(pin.p);
    const auto sp = params(pin.a, pin.b, pin.p);
    const auto sys = DifferentialSystem::gardner(sp);
    const ReferencePairing* pairing = nullptr;
    const auto pairings = reference_pairings(sp);
    for (const auto& pr : pairings)
      if (pr.case_label == pin.case_label && pr.generator == pin.generator) pairing = &pr;
    REQUIRE(pairing != nullptr);
    const auto cv = ibragimov_vector(named_generator(pin.generator, pin.p), pairing->substitution, sys);
    const auto ref = reference_vector(pin.case_label, sp);
    CHECK(divergence_residual(cv, sys).is_zero);
    CHECK(equivalent_up_to_trivial(cv, ref, sys) == pin.lambda);
    CHECK(differ_by_trivial(cv, ref, pin.lambda, sys));
  }
}

TEST_CASE("the scaling vector is trivial at p = 2") {
  const auto sp = params(0, 1, 2);
  const auto sys = DifferentialSystem::gardner(sp);
  const auto cv = ibragimov_vector(named_generator("X1", 2), {P("u"), P("v"), ""}, sys);
  CHECK(divergence_residual(cv, sys).is_zero);
  CHECK(density_signature(cv, sys).is_zero());
  CHECK_FALSE(equivalent_up_to_trivial(cv, reference_vector("i", sp), sys).has_value());
}
