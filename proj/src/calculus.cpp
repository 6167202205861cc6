#include "gslab/calculus.hpp"

#include <stdexcept>
#include <vector>

namespace gslab {

JetExpression partial_derivative(const JetExpression& e, Symbol s) {
  JetExpression::Builder b;
  for (const auto& [m, c] : e.terms()) {
    unsigned k = m.exponent(s);
    if (k == 0) continue;
    b.add(m.with_exponent(s, k - 1), c * k);
  }
  return std::move(b).build();
}

JetExpression total_derivative(const JetExpression& e, Direction dir) {
  const Symbol independent = Symbol::independent(dir);
  JetExpression::Builder b;
  for (const auto& [m, c] : e.terms()) {
    for (const auto& [sym, k] : m.factors()) {
      if (sym == independent) {
        b.add(m.with_exponent(sym, k - 1), c * k);
      } else if (auto raised = sym.raised(dir)) {
        Monomial lowered = m.with_exponent(sym, k - 1);
        b.add(lowered.with_exponent(*raised, lowered.exponent(*raised) + 1), c * k);
      }
    }
  }
  return std::move(b).build();
}

JetExpression total_derivative(const JetExpression& e, Direction dir, unsigned times) {
  JetExpression r = e;
  for (unsigned i = 0; i < times; ++i) r = total_derivative(r, dir);
  return r;
}

JetExpression substitute(const JetExpression& e, const std::map<Symbol, JetExpression>& map) {
  if (map.empty()) return e;
  // Powers of each replacement are cached per call.
  std::map<Symbol, std::vector<JetExpression>> powers;
  auto power_of = [&](Symbol s, unsigned k) -> const JetExpression& {
    auto& list = powers[s];
    if (list.empty()) list.push_back(JetExpression(Rational(1)));
    while (list.size() <= k) list.push_back(list.back() * map.at(s));
    return list[k];
  };
  JetExpression::Builder b;
  for (const auto& [m, c] : e.terms()) {
    std::vector<Monomial::Factor> kept;
    JetExpression product(c);
    for (const auto& [sym, k] : m.factors()) {
      if (map.count(sym))
        product = product * power_of(sym, k);
      else
        kept.emplace_back(sym, k);
    }
    b.add_product(product, Monomial::from_factors(std::move(kept)), Rational(1));
  }
  return std::move(b).build();
}

JetExpression substitute_prolonged(const JetExpression& e,
                                   const std::map<Dependent, JetExpression>& map) {
  std::map<Symbol, JetExpression> full;
  // D_J h computed by raising orders one step at a time; cached by coordinate.
  std::map<JetCoordinate, JetExpression> cache;
  auto image = [&](JetCoordinate c) {
    auto it = cache.find(c);
    if (it != cache.end()) return it->second;
    JetExpression r = map.at(c.dependent);
    r = total_derivative(r, Direction::t, c.t_order);
    r = total_derivative(r, Direction::x, c.x_order);
    cache.emplace(c, r);
    return r;
  };
  for (Symbol s : e.symbols()) {
    if (!s.is_jet()) continue;
    JetCoordinate c = s.coordinate();
    if (map.count(c.dependent)) full.emplace(s, image(c));
  }
  return substitute(e, full);
}

namespace {

template <bool kWithT>
JetExpression euler_impl(const JetExpression& e, Dependent w) {
  auto [tmax, xmax] = max_orders(e, w);
  if (!kWithT && tmax > 0)
    throw std::invalid_argument("x-only Euler operator applied to an expression with t-derivatives of " +
                                std::string(name(w)));
  JetExpression result;
  for (unsigned i = 0; i <= tmax; ++i) {
    for (unsigned j = 0; j <= xmax; ++j) {
      JetExpression d = partial_derivative(e, JetCoordinate{w, i, j});
      if (d.is_zero()) continue;
      d = total_derivative(d, Direction::t, i);
      d = total_derivative(d, Direction::x, j);
      if ((i + j) % 2 == 1)
        result -= d;
      else
        result += d;
    }
  }
  return result;
}

}  // namespace

JetExpression euler_operator(const JetExpression& e, Dependent w) { return euler_impl<true>(e, w); }

JetExpression euler_operator_x(const JetExpression& e, Dependent w) {
  return euler_impl<false>(e, w);
}

Rational evaluate(const JetExpression& e, const std::map<Symbol, Rational>& point) {
  Rational total = 0;
  for (const auto& [m, c] : e.terms()) {
    Rational term = c;
    for (const auto& [sym, k] : m.factors()) {
      auto it = point.find(sym);
      if (it == point.end())
        throw std::invalid_argument("evaluate: no value for symbol " + sym.name());
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), it->second.get_num_mpz_t(), k);
      mpz_pow_ui(p.get_den_mpz_t(), it->second.get_den_mpz_t(), k);
      term *= p;
    }
    total += term;
  }
  return total;
}

std::pair<unsigned, unsigned> max_orders(const JetExpression& e, Dependent w) {
  unsigned tmax = 0, xmax = 0;
  for (Symbol s : e.symbols()) {
    if (!s.is_jet()) continue;
    JetCoordinate c = s.coordinate();
    if (c.dependent != w) continue;
    tmax = std::max(tmax, c.t_order);
    xmax = std::max(xmax, c.x_order);
  }
  return {tmax, xmax};
}

}  // namespace gslab
