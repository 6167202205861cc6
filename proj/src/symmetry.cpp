#include "gslab/symmetry.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "gslab/calculus.hpp"

namespace gslab {

namespace {

const JetExpression& jet_u() {
  static const JetExpression e = JetExpression::coordinate(Dependent::u);
  return e;
}
const JetExpression& jet_v() {
  static const JetExpression e = JetExpression::coordinate(Dependent::v);
  return e;
}
JetExpression var(Dependent w, unsigned t_order, unsigned x_order) {
  return JetExpression::coordinate(w, t_order, x_order);
}
Symbol sym(Dependent w) { return Symbol::jet(coord(w)); }

bool is_point_symbol(Symbol s) {
  if (s.is_unknown() || s.kind() == Symbol::Kind::t || s.kind() == Symbol::Kind::x) return true;
  JetCoordinate c = s.coordinate();
  return c.order() == 0 && (c.dependent == Dependent::u || c.dependent == Dependent::v);
}

}  // namespace

void SymmetryGenerator::validate() const {
  for (const JetExpression* e : {&T, &X, &U, &V})
    for (Symbol s : e->symbols())
      if (!is_point_symbol(s))
        throw std::invalid_argument("generator coefficient depends on " + s.name() +
                                    "; only t, x, u, v are allowed");
}

const JetExpression& SymmetryGenerator::component(std::size_t i) const {
  switch (i) {
    case 0: return T;
    case 1: return X;
    case 2: return U;
    case 3: return V;
  }
  throw std::out_of_range("generator component index");
}

SymmetryGenerator SymmetryGenerator::scaled(const Rational& k) const {
  return {k * T, k * X, k * U, k * V, label};
}

SymmetryGenerator operator+(const SymmetryGenerator& a, const SymmetryGenerator& b) {
  return {a.T + b.T, a.X + b.X, a.U + b.U, a.V + b.V, ""};
}

bool operator==(const SymmetryGenerator& a, const SymmetryGenerator& b) {
  return a.T == b.T && a.X == b.X && a.U == b.U && a.V == b.V;
}

Characteristic characteristic(const SymmetryGenerator& g) {
  return {g.U - g.T * var(Dependent::u, 1, 0) - g.X * var(Dependent::u, 0, 1),
          g.V - g.T * var(Dependent::v, 1, 0) - g.X * var(Dependent::v, 0, 1)};
}

JetExpression invariance_lhs(const SymmetryGenerator& g, const DifferentialSystem& sys, Dependent w) {
  const Characteristic W = characteristic(g);
  const JetExpression& flux = sys.flux(w);
  const Symbol su = sym(Dependent::u), sv = sym(Dependent::v);
  const JetExpression flux_u = partial_derivative(flux, su);
  const JetExpression flux_v = partial_derivative(flux, sv);
  const JetExpression flux_uu = partial_derivative(flux_u, su);
  const JetExpression flux_uv = partial_derivative(flux_u, sv);
  const JetExpression flux_vv = partial_derivative(flux_v, sv);
  const Dependent u = Dependent::u, v = Dependent::v;
  const JetExpression ux = var(u, 0, 1), vx = var(v, 0, 1);

  // (D_t W^w + T w_tt + X w_tx)
  JetExpression lhs = total_derivative(W.of(w), Direction::t) + g.T * var(w, 2, 0) + g.X * var(w, 1, 1);
  // flux_u (D_x W^u + T u_tx + X u_xx) + flux_v (D_x W^v + T v_tx + X v_xx)
  lhs += flux_u * (total_derivative(W.Wu, Direction::x) + g.T * var(u, 1, 1) + g.X * var(u, 0, 2));
  lhs += flux_v * (total_derivative(W.Wv, Direction::x) + g.T * var(v, 1, 1) + g.X * var(v, 0, 2));
  // flux_uu U u_x + flux_uv (V u_x + U v_x) + flux_vv V v_x
  lhs += flux_uu * g.U * ux + flux_uv * (g.V * ux + g.U * vx) + flux_vv * g.V * vx;
  // c (D_x^3 W^w + T w_txxx + X w_xxxx)
  lhs += sys.c() * (total_derivative(W.of(w), Direction::x, 3) + g.T * var(w, 1, 3) + g.X * var(w, 0, 4));
  return lhs;
}

std::pair<ResidualReport, ResidualReport> invariance_residual(const SymmetryGenerator& g,
                                                              const DifferentialSystem& sys) {
  g.validate();
  Reducer reducer(sys);
  return {reducer.reduce_with_trace(invariance_lhs(g, sys, Dependent::u)),
          reducer.reduce_with_trace(invariance_lhs(g, sys, Dependent::v))};
}

bool is_symmetry(const SymmetryGenerator& g, const DifferentialSystem& sys) {
  g.validate();
  Reducer reducer(sys);
  return reducer.reduce(invariance_lhs(g, sys, Dependent::u)).is_zero() &&
         reducer.reduce(invariance_lhs(g, sys, Dependent::v)).is_zero();
}

MultiplierCheck check_multipliers(const SymmetryGenerator& g, const DifferentialSystem& sys) {
  auto [first, second] = invariance_residual(g, sys);
  MultiplierCheck out;
  out.first_order_only = first.first_order_only() && second.first_order_only();
  const JetCoordinate ut{Dependent::u, 1, 0}, vt{Dependent::v, 1, 0};
  out.M = first.multiplier_of(ut);
  out.N = first.multiplier_of(vt);
  out.P = second.multiplier_of(ut);
  out.Q = second.multiplier_of(vt);
  const Symbol su = sym(Dependent::u), sv = sym(Dependent::v), st = Symbol::t();
  const JetExpression Tt = partial_derivative(g.T, st);
  out.matches_closed_form = out.first_order_only &&
                            out.M == partial_derivative(g.U, su) - Tt &&
                            out.N == partial_derivative(g.U, sv) &&
                            out.P == partial_derivative(g.V, su) &&
                            out.Q == partial_derivative(g.V, sv) - Tt;
  return out;
}

std::vector<Monomial> point_monomials(unsigned degree) {
  const std::array<Symbol, 4> vars{Symbol::t(), Symbol::x(), sym(Dependent::u), sym(Dependent::v)};
  std::vector<Monomial> out;
  for (unsigned d = 0; d <= degree; ++d)
    for (unsigned a = 0; a <= d; ++a)
      for (unsigned b = 0; a + b <= d; ++b)
        for (unsigned c = 0; a + b + c <= d; ++c) {
          unsigned e = d - a - b - c;
          out.push_back(Monomial::from_factors({{vars[0], a}, {vars[1], b}, {vars[2], c}, {vars[3], e}}));
        }
  std::sort(out.begin(), out.end(), DegLexLess{});
  return out;
}

SymmetryClassification solve_determining(const DifferentialSystem& sys, unsigned degree) {
  if (degree < 1) throw std::invalid_argument("ansatz degree must be >= 1");
  SymmetryClassification cls;
  cls.ansatz = point_monomials(degree);
  const std::size_t m = cls.ansatz.size();
  static const char* kNames[] = {"T", "X", "U", "V"};
  std::array<JetExpression::Builder, 4> parts;
  for (std::size_t comp = 0; comp < 4; ++comp)
    for (std::size_t i = 0; i < m; ++i) {
      const auto index = static_cast<std::uint32_t>(comp * m + i);
      parts[comp].add(cls.ansatz[i] * Monomial(Symbol::unknown(index)), Rational(1));
      cls.problem.unknowns.push_back(std::string(kNames[comp]) + "[" + cls.ansatz[i].to_string() + "]");
    }
  SymmetryGenerator generic{std::move(parts[0]).build(), std::move(parts[1]).build(),
                            std::move(parts[2]).build(), std::move(parts[3]).build(), "ansatz"};
  Reducer reducer(sys);
  std::vector<JetExpression> residuals{reducer.reduce(invariance_lhs(generic, sys, Dependent::u)),
                                       reducer.reduce(invariance_lhs(generic, sys, Dependent::v))};
  cls.problem.equations = collect_linear_equations(residuals, 4 * m);
  Nullspace ns = nullspace(cls.problem.equations, 4 * m);
  cls.problem.rank = ns.rank;
  cls.problem.solution_basis = ns.basis;
  for (std::size_t i = 0; i < ns.basis.size(); ++i) {
    SymmetryGenerator g = generator_from_coordinates(ns.basis[i], cls.ansatz);
    g.label = "G" + std::to_string(i + 1);
    cls.basis.push_back(std::move(g));
  }
  return cls;
}

std::optional<RationalVector> ansatz_coordinates(const SymmetryGenerator& g,
                                                 const std::vector<Monomial>& ansatz) {
  const std::size_t m = ansatz.size();
  RationalVector out(4 * m, Rational(0));
  for (std::size_t comp = 0; comp < 4; ++comp) {
    for (const auto& [mono, c] : g.component(comp).terms()) {
      auto it = std::find(ansatz.begin(), ansatz.end(), mono);
      if (it == ansatz.end()) return std::nullopt;
      out[comp * m + static_cast<std::size_t>(it - ansatz.begin())] = c;
    }
  }
  return out;
}

SymmetryGenerator generator_from_coordinates(const RationalVector& coords,
                                             const std::vector<Monomial>& ansatz) {
  const std::size_t m = ansatz.size();
  if (coords.size() != 4 * m) throw std::invalid_argument("coordinate vector has wrong length");
  std::array<JetExpression::Builder, 4> parts;
  for (std::size_t comp = 0; comp < 4; ++comp)
    for (std::size_t i = 0; i < m; ++i) parts[comp].add(ansatz[i], coords[comp * m + i]);
  return {std::move(parts[0]).build(), std::move(parts[1]).build(), std::move(parts[2]).build(),
          std::move(parts[3]).build(), ""};
}

SymmetryGenerator named_generator(const std::string& name, unsigned p) {
  if (p < 1) throw std::invalid_argument("p must be positive");
  const JetExpression t = JetExpression::symbol(Symbol::t());
  const JetExpression x = JetExpression::symbol(Symbol::x());
  const JetExpression& u = jet_u();
  const JetExpression& v = jet_v();
  if (name == "X1" || name == "Y1") {
    const Rational k = Rational(name == "X1" ? -1 : -2) / Rational(p);
    return {3 * t, x, k * u, k * v, name};
  }
  if (name == "X2") return {JetExpression(1), {}, {}, {}, name};
  if (name == "X3") return {{}, JetExpression(1), {}, {}, name};
  if (name == "X4") return {{}, {}, v, -v, name};
  if (name == "Y4") return {{}, {}, v, -u, name};
  if (name == "X5") return {{}, {}, u, -u, name};
  throw std::invalid_argument("unknown generator name '" + name + "'");
}

std::vector<std::string> named_generator_names() { return {"X1", "Y1", "X2", "X3", "X4", "Y4", "X5"}; }

TableCase table_case(const SystemParameters& params) {
  if (params.a == 0) return {"a=0", {"X1", "X2", "X3"}};
  if (params.b == 0) {
    TableCase tc{"b=0", {"Y1", "X2", "X3"}};
    if (params.p == 1) {
      tc.generators.push_back("X4");
      tc.generators.push_back("X5");
    }
    if (params.p == 2) tc.generators.push_back("Y4");
    return tc;
  }
  return {"ab!=0", {"X2", "X3"}};
}

TableMatch match_table(const SymmetryClassification& cls, const DifferentialSystem& sys) {
  if (!sys.params()) throw std::invalid_argument("table matching needs a Gardner system");
  TableMatch out;
  out.expected = table_case(*sys.params());
  out.computed_dimension = cls.basis.size();
  bool all_found = true;
  for (const auto& name : out.expected.generators) {
    NamedCoordinates nc{name, std::nullopt};
    if (auto target = ansatz_coordinates(named_generator(name, sys.params()->p), cls.ansatz))
      nc.coordinates = solve_in_span(cls.problem.solution_basis, *target);
    if (!nc.coordinates) {
      out.missing.push_back(name);
      all_found = false;
    }
    out.named.push_back(std::move(nc));
  }
  const std::size_t expected_dim = out.expected.generators.size();
  out.extra_directions = out.computed_dimension > expected_dim ? out.computed_dimension - expected_dim : 0;
  out.ok = all_found && out.computed_dimension == expected_dim;
  return out;
}

namespace {

// A(h) for a point vector field A.
JetExpression apply_field(const SymmetryGenerator& a, const JetExpression& h) {
  return a.T * partial_derivative(h, Symbol::t()) + a.X * partial_derivative(h, Symbol::x()) +
         a.U * partial_derivative(h, sym(Dependent::u)) + a.V * partial_derivative(h, sym(Dependent::v));
}

}  // namespace

SymmetryGenerator commutator(const SymmetryGenerator& a, const SymmetryGenerator& b) {
  SymmetryGenerator out;
  out.T = apply_field(a, b.T) - apply_field(b, a.T);
  out.X = apply_field(a, b.X) - apply_field(b, a.X);
  out.U = apply_field(a, b.U) - apply_field(b, a.U);
  out.V = apply_field(a, b.V) - apply_field(b, a.V);
  out.label = "[" + a.label + "," + b.label + "]";
  return out;
}

}  // namespace gslab
