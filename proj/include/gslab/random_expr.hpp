#pragma once

#include <cstdint>
#include <random>

#include "gslab/expression.hpp"

namespace gslab {

struct RandomExpressionOptions {
  unsigned max_terms = 4;
  unsigned max_degree = 3;
  unsigned max_t_order = 1;  // 0: no t-derivatives
  unsigned max_x_order = 3;
  bool nonlocal = false;     // allow ubar, vbar
  bool independents = true;  // allow explicit t, x
  int max_coefficient = 5;
};

/// Random polynomial with small rational coefficients.
JetExpression random_expression(std::mt19937_64& rng, const RandomExpressionOptions& options = {});

/// Random polynomial in (u, v) of total degree <= degree.
JetExpression random_flux(std::mt19937_64& rng, unsigned degree);

/// Seed from the GSL_SEED environment variable, or `fallback` when unset or
/// malformed.
std::uint64_t seed_from_env(std::uint64_t fallback = 20241015);

}  // namespace gslab
