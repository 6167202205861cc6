#include "gslab/random_expr.hpp"

#include <cstdlib>
#include <string>
#include <vector>

namespace gslab {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Rational random_coefficient(std::mt19937_64& rng, int bound) {
  int num = 0;
  while (num == 0) num = uniform(rng, -bound, bound);
  return Rational(num) / Rational(uniform(rng, 1, 3));
}

}  // namespace

JetExpression random_expression(std::mt19937_64& rng, const RandomExpressionOptions& options) {
  std::vector<Symbol> pool;
  if (options.independents) {
    pool.push_back(Symbol::t());
    pool.push_back(Symbol::x());
  }
  const int dependents = options.nonlocal ? 4 : 2;
  for (int d = 0; d < dependents; ++d)
    for (unsigned i = 0; i <= options.max_t_order; ++i)
      for (unsigned j = 0; j <= options.max_x_order; ++j)
        pool.push_back(Symbol::jet({static_cast<Dependent>(d), i, j}));
  JetExpression::Builder b;
  const int terms = uniform(rng, 1, static_cast<int>(options.max_terms));
  for (int k = 0; k < terms; ++k) {
    std::vector<Monomial::Factor> factors;
    const int degree = uniform(rng, 0, static_cast<int>(options.max_degree));
    for (int f = 0; f < degree; ++f)
      factors.emplace_back(pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))], 1u);
    b.add(Monomial::from_factors(std::move(factors)), random_coefficient(rng, options.max_coefficient));
  }
  return std::move(b).build();
}

JetExpression random_flux(std::mt19937_64& rng, unsigned degree) {
  const Symbol u = Symbol::jet(coord(Dependent::u)), v = Symbol::jet(coord(Dependent::v));
  JetExpression::Builder b;
  for (unsigned i = 0; i <= degree; ++i)
    for (unsigned j = 0; i + j <= degree; ++j) {
      if (i + j < 2 || uniform(rng, 0, 2) == 0) continue;
      b.add(Monomial::from_factors({{u, i}, {v, j}}), Rational(uniform(rng, -4, 4)));
    }
  return std::move(b).build();
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* text = std::getenv("GSL_SEED");
  if (!text || !*text) return fallback;
  try {
    std::size_t used = 0;
    const auto value = std::stoull(text, &used);
    return used == std::string(text).size() ? value : fallback;
  } catch (const std::exception&) {
    return fallback;
  }
}

}  // namespace gslab
