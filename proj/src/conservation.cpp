#include "gslab/conservation.hpp"

#include "gslab/calculus.hpp"

namespace gslab {

namespace {

JetExpression var(Dependent w, unsigned t_order = 0, unsigned x_order = 0) {
  return JetExpression::coordinate(w, t_order, x_order);
}

// c (h D_x^2 - D_x h D_x + D_x^2 h) W
JetExpression dispersive_part(const Rational& c, const JetExpression& h, const JetExpression& W) {
  const JetExpression hx = total_derivative(h, Direction::x);
  const JetExpression Wx = total_derivative(W, Direction::x);
  return c * (h * total_derivative(Wx, Direction::x) - hx * Wx + total_derivative(hx, Direction::x) * W);
}

}  // namespace

ConservedVector ibragimov_vector_unchecked(const SymmetryGenerator& g, const Substitution& sub,
                                           const DifferentialSystem& sys) {
  const Characteristic W = characteristic(g);
  const Symbol su = Symbol::jet(coord(Dependent::u)), sv = Symbol::jet(coord(Dependent::v));
  const JetExpression& r = sys.flux_r();
  const JetExpression& s = sys.flux_s();
  ConservedVector cv;
  cv.Ct = sub.phi * W.Wu + sub.psi * W.Wv;
  cv.Cx = sub.phi * (partial_derivative(r, su) * W.Wu + partial_derivative(r, sv) * W.Wv) +
          dispersive_part(sys.c(), sub.phi, W.Wu) +
          sub.psi * (partial_derivative(s, su) * W.Wu + partial_derivative(s, sv) * W.Wv) +
          dispersive_part(sys.c(), sub.psi, W.Wv);
  cv.provenance = (g.label.empty() ? "generator" : g.label) + "/" +
                  (sub.label.empty() ? "substitution" : sub.label);
  return cv;
}

ConservedVector ibragimov_vector(const SymmetryGenerator& g, const Substitution& sub,
                                 const DifferentialSystem& sys) {
  auto [inv1, inv2] = invariance_residual(g, sys);
  if (!inv1.is_zero || !inv2.is_zero)
    throw PreconditionError("generator " + g.label + " is not a symmetry; invariance residuals: (" +
                            inv1.residual.to_string() + ", " + inv2.residual.to_string() + ")");
  auto [sa1, sa2] = self_adjointness_residual(sys, sub);
  if (!sa1.is_zero || !sa2.is_zero)
    throw PreconditionError("substitution " + sub.label + " is not admissible; residuals: (" +
                            sa1.residual.to_string() + ", " + sa2.residual.to_string() + ")");
  ConservedVector raw = ibragimov_vector_unchecked(g, sub, sys);
  Reducer reducer(sys);
  ConservedVector cv{reducer.reduce(raw.Ct), reducer.reduce(raw.Cx), raw.provenance};
  ResidualReport div = divergence_residual(cv, sys);
  if (!div.is_zero)
    throw std::logic_error("conserved vector " + cv.provenance + " fails the divergence check: " +
                           div.residual.to_string());
  return cv;
}

std::pair<ConservedVector, ConservedVector> direct_integration_vectors(const DifferentialSystem& sys) {
  return {{var(Dependent::u), sys.flux_r() + sys.c() * var(Dependent::u, 0, 2), "direct-integration"},
          {var(Dependent::v), sys.flux_s() + sys.c() * var(Dependent::v, 0, 2), "direct-integration"}};
}

ResidualReport divergence_residual(const ConservedVector& cv, const DifferentialSystem& sys) {
  return reduce_mod_system(total_derivative(cv.Ct, Direction::t) + total_derivative(cv.Cx, Direction::x),
                           sys);
}

DensitySignature density_signature(const JetExpression& density, const DifferentialSystem& sys) {
  Reducer reducer(sys);
  const JetExpression reduced = reducer.reduce(density);
  return {euler_operator_x(reduced, Dependent::u), euler_operator_x(reduced, Dependent::v)};
}

std::optional<Rational> equivalent_up_to_trivial(const ConservedVector& cv1, const ConservedVector& cv2,
                                                 const DifferentialSystem& sys) {
  const DensitySignature s1 = density_signature(cv1, sys);
  const DensitySignature s2 = density_signature(cv2, sys);
  if (s2.is_zero()) return s1.is_zero() ? std::optional<Rational>(1) : std::nullopt;
  const JetExpression& ref = s2.sig_u.is_zero() ? s2.sig_v : s2.sig_u;
  const JetExpression& other = s2.sig_u.is_zero() ? s1.sig_v : s1.sig_u;
  const auto& [mono, coef] = *ref.terms().begin();
  const Rational lambda = other.coefficient(mono) / coef;
  if (lambda == 0) return std::nullopt;
  if (s1.sig_u == lambda * s2.sig_u && s1.sig_v == lambda * s2.sig_v) return lambda;
  return std::nullopt;
}

ConservedVector add_trivial(const ConservedVector& cv, const JetExpression& h, const DifferentialSystem& sys) {
  Reducer reducer(sys);
  return {reducer.reduce(cv.Ct + total_derivative(h, Direction::x)),
          reducer.reduce(cv.Cx - total_derivative(h, Direction::t)), cv.provenance + "+trivial"};
}

namespace {

JetExpression dxx(const JetExpression& e) { return total_derivative(e, Direction::x, 2); }

}  // namespace

ConservedVector reference_vector(const std::string& case_label, const SystemParameters& params) {
  params.validate();
  const JetExpression u = var(Dependent::u), v = var(Dependent::v);
  const JetExpression ux = var(Dependent::u, 0, 1), vx = var(Dependent::v, 0, 1);
  const unsigned p = params.p;
  const JetExpression sq = u * u + v * v;
  const JetExpression grad = ux * ux + vx * vx;
  if (case_label == "i") {
    if (params.a != 0) throw ParameterError("vector i requires a = 0");
    return {Rational(p + 1) * sq,
            Rational(2 * (2 * p + 1)) * params.b * (u * v).pow(p + 1) +
                params.c * Rational(p + 1) * (dxx(sq) - 3 * grad),
            "reference:i"};
  }
  if (case_label == "ii.a") {
    if (params.b != 0 || p != 1) throw ParameterError("vector ii.a requires b = 0 and p = 1");
    const JetExpression w = u + v;
    const JetExpression wx = ux + vx;
    return {3 * w * w, 4 * params.a * w.pow(3) + 3 * params.c * (dxx(w * w) - 3 * wx * wx), "reference:ii.a"};
  }
  if (case_label == "ii.b") {
    if (params.b != 0 || p != 2) throw ParameterError("vector ii.b requires b = 0 and p = 2");
    return {2 * sq, 3 * params.a * sq * sq + 2 * params.c * (dxx(sq) - 3 * grad), "reference:ii.b"};
  }
  throw std::invalid_argument("unknown conserved-vector case '" + case_label + "'");
}

std::vector<std::string> reference_vector_cases(const SystemParameters& params) {
  std::vector<std::string> out;
  if (params.a == 0) out.push_back("i");
  if (params.b == 0 && params.p == 1) out.push_back("ii.a");
  if (params.b == 0 && params.p == 2) out.push_back("ii.b");
  return out;
}

std::vector<ReferencePairing> reference_pairings(const SystemParameters& params) {
  const JetExpression u = var(Dependent::u), v = var(Dependent::v);
  const JetExpression t = JetExpression::symbol(Symbol::t()), x = JetExpression::symbol(Symbol::x());
  std::vector<ReferencePairing> out;
  for (const auto& label : reference_vector_cases(params)) {
    if (label == "i" || label == "ii.b") {
      out.push_back({label, label == "i" ? "X1" : "Y1", {u, v, "(u,v)"}});
    } else {
      out.push_back({label, "Y1", {u + v, u + v, "(u+v,u+v)"}});
      const JetExpression h = 2 * params.a * t * (u + v) - x;
      out.push_back({label, "X2", {h, h, "(2at(u+v)-x,2at(u+v)-x)"}});
    }
  }
  return out;
}

}  // namespace gslab
