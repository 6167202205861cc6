#include "gslab/system.hpp"

#include "gslab/calculus.hpp"

namespace gslab {

void SystemParameters::validate() const {
  if (p < 1) throw ParameterError("p must be a positive integer");
  if (c == 0) throw ParameterError("c must be nonzero (need {ac, bc} != {0})");
  if (a == 0 && b == 0) throw ParameterError("a and b cannot both vanish (need {ac, bc} != {0})");
}

DifferentialSystem::DifferentialSystem(JetExpression r, JetExpression s, Rational c,
                                       std::optional<SystemParameters> params)
    : r_(std::move(r)), s_(std::move(s)), c_(std::move(c)), params_(std::move(params)) {
  auto build = [&](Dependent w, const JetExpression& flux) {
    return JetExpression::coordinate(w, 1, 0) + total_derivative(flux, Direction::x) +
           c_ * JetExpression::coordinate(w, 0, 3);
  };
  F1_ = build(Dependent::u, r_);
  F2_ = build(Dependent::v, s_);
}

DifferentialSystem DifferentialSystem::gardner(const SystemParameters& params) {
  params.validate();
  const JetExpression u = JetExpression::coordinate(Dependent::u);
  const JetExpression v = JetExpression::coordinate(Dependent::v);
  const JetExpression up_plus_vp = u.pow(params.p) + v.pow(params.p);
  const JetExpression uv_p = (u * v).pow(params.p);
  JetExpression f = params.a * (up_plus_vp * u) + params.b * (uv_p * v);
  JetExpression g = params.a * (up_plus_vp * v) + params.b * (uv_p * u);
  return DifferentialSystem(std::move(f), std::move(g), params.c, params);
}

DifferentialSystem DifferentialSystem::general(JetExpression flux_r, JetExpression flux_s,
                                               Rational c) {
  const Symbol u = Symbol::jet(coord(Dependent::u));
  const Symbol v = Symbol::jet(coord(Dependent::v));
  for (const JetExpression* flux : {&flux_r, &flux_s})
    for (Symbol s : flux->symbols())
      if (s != u && s != v) throw ParameterError("fluxes may depend on u and v only, found " + s.name());
  if (c == 0) throw ParameterError("c must be nonzero");
  return DifferentialSystem(std::move(flux_r), std::move(flux_s), std::move(c), std::nullopt);
}

JetExpression ResidualReport::multiplier_of(JetCoordinate c) const {
  for (const auto& m : multipliers)
    if (m.coordinate == c) return m.multiplier;
  return {};
}

JetExpression ResidualReport::recombine() const {
  JetExpression total = residual;
  for (const auto& m : multipliers) total += m.multiplier * m.generator;
  return total;
}

bool ResidualReport::first_order_only() const {
  for (const auto& m : multipliers)
    if (m.coordinate.t_order != 1 || m.coordinate.x_order != 0) return false;
  return true;
}

Reducer::Reducer(const DifferentialSystem& sys) : sys_(sys) {}

const JetExpression& Reducer::rewrite(JetCoordinate c) {
  if (auto it = memo_.find(c); it != memo_.end()) return it->second;
  if ((c.dependent != Dependent::u && c.dependent != Dependent::v) || c.t_order == 0)
    throw std::logic_error("rewrite: " + c.name() + " is not a t-derivative of u or v");
  JetExpression r;
  if (c.x_order > 0) {
    r = total_derivative(rewrite({c.dependent, c.t_order, c.x_order - 1}), Direction::x);
  } else if (c.t_order == 1) {
    r = -total_derivative(sys_.flux(c.dependent), Direction::x) -
        sys_.c() * JetExpression::coordinate(c.dependent, 0, 3);
  } else {
    r = reduce(total_derivative(rewrite({c.dependent, c.t_order - 1, 0}), Direction::t));
  }
  return memo_.emplace(c, std::move(r)).first->second;
}

namespace {

std::vector<JetCoordinate> reducible_coordinates(const JetExpression& e) {
  std::vector<JetCoordinate> out;
  for (Symbol s : e.symbols()) {
    if (!s.is_jet()) continue;
    JetCoordinate c = s.coordinate();
    if ((c.dependent == Dependent::u || c.dependent == Dependent::v) && c.t_order > 0)
      out.push_back(c);
  }
  return out;
}

}  // namespace

JetExpression Reducer::reduce(const JetExpression& e) {
  std::map<Symbol, JetExpression> map;
  for (JetCoordinate c : reducible_coordinates(e)) map.emplace(Symbol::jet(c), rewrite(c));
  return substitute(e, map);
}

ResidualReport Reducer::reduce_with_trace(const JetExpression& e) {
  ResidualReport report;
  JetExpression current = e;
  for (JetCoordinate c : reducible_coordinates(e)) {
    const Symbol y = Symbol::jet(c);
    const JetExpression& image = rewrite(c);
    // current = sum_n a_n y^n  ->  sum_n a_n image^n; quotient by (y - image)
    // is sum_n a_n sum_{i<n} y^i image^(n-1-i).
    std::map<unsigned, JetExpression::Builder> by_power;
    for (const auto& [m, coef] : current.terms())
      by_power[m.exponent(y)].add(m.with_exponent(y, 0), coef);
    JetExpression::Builder next, quotient;
    const JetExpression ysym = JetExpression::symbol(y);
    for (auto& [n, builder] : by_power) {
      JetExpression a_n = std::move(builder).build();
      next.add(a_n * image.pow(n));
      for (unsigned i = 0; i < n; ++i) quotient.add(a_n * ysym.pow(i) * image.pow(n - 1 - i));
    }
    current = std::move(next).build();
    report.multipliers.push_back({c, ysym - image, std::move(quotient).build()});
  }
  report.residual = std::move(current);
  report.is_zero = report.residual.is_zero();
  return report;
}

ResidualReport reduce_mod_system(const JetExpression& e, const DifferentialSystem& sys) {
  Reducer reducer(sys);
  return reducer.reduce_with_trace(e);
}

ScalarReduction scalar_reduction_check(const DifferentialSystem& sys) {
  if (!sys.params()) throw std::invalid_argument("scalar reduction check needs a Gardner system");
  const SystemParameters& prm = *sys.params();
  ScalarReduction out;
  out.reduced = substitute_prolonged(sys.F1(), {{Dependent::v, JetExpression::coordinate(Dependent::u)}});
  const Symbol u = Symbol::jet(coord(Dependent::u));
  const Symbol ux = Symbol::jet(coord(Dependent::u, 0, 1));
  const Monomial up_ux = Monomial(u, prm.p) * Monomial(ux);
  const Monomial u2p_ux = Monomial(u, 2 * prm.p) * Monomial(ux);
  out.a_prime = out.reduced.coefficient(up_ux);
  out.b_prime = out.reduced.coefficient(u2p_ux);
  const Rational expected_a = 2 * prm.a * (prm.p + 1);
  const Rational expected_b = prm.b * (2 * prm.p + 1);
  JetExpression expected = JetExpression::coordinate(Dependent::u, 1, 0) +
                           JetExpression::term(expected_a, up_ux) +
                           JetExpression::term(expected_b, u2p_ux) +
                           prm.c * JetExpression::coordinate(Dependent::u, 0, 3);
  out.matches = out.reduced == expected;
  return out;
}

}  // namespace gslab
