#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gslab/expression.hpp"

namespace gslab {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Constants of the Gardner-type system. Admissible when p >= 1, c != 0 and
/// (a, b) != (0, 0).
struct SystemParameters {
  Rational a;
  Rational b;
  Rational c;
  unsigned p = 1;

  void validate() const;
};

/// An evolution pair
///   F1 = u_t + D_x(flux_r) + c u_xxx,   F2 = v_t + D_x(flux_s) + c v_xxx
/// with polynomial fluxes in (u, v).
class DifferentialSystem {
 public:
  /// The Gardner-type instance with
  ///   r = f = a(u^p + v^p)u + b(uv)^p v,  s = g = a(u^p + v^p)v + b(uv)^p u.
  static DifferentialSystem gardner(const SystemParameters& params);
  /// General two-flux system; r and s may only contain u and v.
  static DifferentialSystem general(JetExpression flux_r, JetExpression flux_s, Rational c);

  const JetExpression& F1() const { return F1_; }
  const JetExpression& F2() const { return F2_; }
  const JetExpression& flux_r() const { return r_; }
  const JetExpression& flux_s() const { return s_; }
  const Rational& c() const { return c_; }
  /// Present for Gardner instances only.
  const std::optional<SystemParameters>& params() const { return params_; }

  const JetExpression& equation(Dependent w) const { return w == Dependent::u ? F1_ : F2_; }
  const JetExpression& flux(Dependent w) const { return w == Dependent::u ? r_ : s_; }

 private:
  DifferentialSystem(JetExpression r, JetExpression s, Rational c,
                     std::optional<SystemParameters> params);

  JetExpression r_;
  JetExpression s_;
  Rational c_;
  std::optional<SystemParameters> params_;
  JetExpression F1_;
  JetExpression F2_;
};

/// Multiplier of one generator of the differential ideal, recovered from the
/// reduction trace. The generator attached to coordinate y is
/// y - reduce(y); for y = u_t this is exactly F1, for y = v_t exactly F2.
struct IdealMultiplier {
  JetCoordinate coordinate;
  JetExpression generator;
  JetExpression multiplier;
};

struct ResidualReport {
  JetExpression residual;
  bool is_zero = false;
  std::vector<IdealMultiplier> multipliers;

  /// Multiplier attached to u_t (resp. v_t), i.e. to F1 (resp. F2). Zero when
  /// the coordinate does not occur.
  JetExpression multiplier_of(JetCoordinate c) const;
  /// residual + sum of multiplier * generator; equals the reduced input.
  JetExpression recombine() const;
  /// True when only u_t and v_t were eliminated, so the input is exactly
  /// M*F1 + N*F2 + residual.
  bool first_order_only() const;
};

/// Rewrites t-derivatives of u, v using the evolution equations. Holds a
/// memo of rewritten coordinates; one instance per thread.
class Reducer {
 public:
  explicit Reducer(const DifferentialSystem& sys);

  /// Result contains no coordinate u_J, v_J with a t in J. ubar/vbar pass through.
  JetExpression reduce(const JetExpression& e);
  ResidualReport reduce_with_trace(const JetExpression& e);
  /// Fully reduced form of the coordinate (dependent u or v, t_order >= 1).
  const JetExpression& rewrite(JetCoordinate c);

 private:
  const DifferentialSystem& sys_;
  std::map<JetCoordinate, JetExpression> memo_;
};

ResidualReport reduce_mod_system(const JetExpression& e, const DifferentialSystem& sys);

/// Result of setting v = u in F1.
struct ScalarReduction {
  bool matches = false;
  Rational a_prime;  // coefficient of u^p u_x
  Rational b_prime;  // coefficient of u^(2p) u_x
  JetExpression reduced;
};

/// Checks F1|_{v=u} = u_t + (a' u^p + b' u^(2p)) u_x + c u_xxx with
/// a' = 2a(p+1), b' = b(2p+1).
ScalarReduction scalar_reduction_check(const DifferentialSystem& sys);

}  // namespace gslab
