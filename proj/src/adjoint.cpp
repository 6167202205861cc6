#include "gslab/adjoint.hpp"

#include <algorithm>
#include <stdexcept>

#include "gslab/calculus.hpp"
#include "gslab/symmetry.hpp"

namespace gslab {

namespace {

JetExpression var(Dependent w, unsigned t_order = 0, unsigned x_order = 0) {
  return JetExpression::coordinate(w, t_order, x_order);
}

}  // namespace

FormalLagrangian formal_lagrangian(const DifferentialSystem& sys) {
  return {var(Dependent::ubar) * sys.F1() + var(Dependent::vbar) * sys.F2()};
}

AdjointSystem adjoint_system(const DifferentialSystem& sys) {
  const FormalLagrangian lag = formal_lagrangian(sys);
  return {-euler_operator(lag.L, Dependent::u), -euler_operator(lag.L, Dependent::v)};
}

AdjointSystem adjoint_closed_form(const DifferentialSystem& sys) {
  const Symbol su = Symbol::jet(coord(Dependent::u)), sv = Symbol::jet(coord(Dependent::v));
  const JetExpression ubar_x = var(Dependent::ubar, 0, 1), vbar_x = var(Dependent::vbar, 0, 1);
  return {var(Dependent::ubar, 1, 0) + partial_derivative(sys.flux_r(), su) * ubar_x +
              partial_derivative(sys.flux_s(), su) * vbar_x + sys.c() * var(Dependent::ubar, 0, 3),
          var(Dependent::vbar, 1, 0) + partial_derivative(sys.flux_r(), sv) * ubar_x +
              partial_derivative(sys.flux_s(), sv) * vbar_x + sys.c() * var(Dependent::vbar, 0, 3)};
}

void Substitution::validate() const {
  if (phi.is_zero() && psi.is_zero())
    throw std::invalid_argument("substitution: phi and psi vanish simultaneously");
  for (const JetExpression* e : {&phi, &psi})
    for (Symbol s : e->symbols()) {
      if (s.is_unknown() || !s.is_jet()) continue;
      JetCoordinate c = s.coordinate();
      if (c.order() > 0 || (c.dependent != Dependent::u && c.dependent != Dependent::v))
        throw std::invalid_argument("substitution depends on " + s.name() +
                                    "; only t, x, u, v are allowed");
    }
}

namespace {

std::pair<JetExpression, JetExpression> substituted_adjoint(const DifferentialSystem& sys,
                                                            const JetExpression& phi,
                                                            const JetExpression& psi) {
  const AdjointSystem adj = adjoint_system(sys);
  const std::map<Dependent, JetExpression> map{{Dependent::ubar, phi}, {Dependent::vbar, psi}};
  return {substitute_prolonged(adj.F1star, map), substitute_prolonged(adj.F2star, map)};
}

}  // namespace

std::pair<ResidualReport, ResidualReport> self_adjointness_residual(const DifferentialSystem& sys,
                                                                    const Substitution& sub) {
  sub.validate();
  auto [first, second] = substituted_adjoint(sys, sub.phi, sub.psi);
  Reducer reducer(sys);
  return {reducer.reduce_with_trace(first), reducer.reduce_with_trace(second)};
}

bool is_self_adjoint_substitution(const DifferentialSystem& sys, const Substitution& sub) {
  auto [first, second] = self_adjointness_residual(sys, sub);
  return first.is_zero && second.is_zero;
}

std::vector<std::string> substitution_cases(const SystemParameters& params) {
  const bool case_i = params.a == 0 || params.p == 2;
  const bool case_ii = params.b == 0 && params.p == 1;
  std::vector<std::string> out;
  if (case_i) out.push_back("i");
  if (case_ii) out.push_back("ii");
  if (out.empty()) out.push_back("iii");
  return out;
}

std::size_t expected_substitution_dimension(const std::string& case_label) {
  if (case_label == "i") return 3;
  if (case_label == "ii") return 4;
  if (case_label == "iii") return 2;
  throw std::invalid_argument("unknown case label '" + case_label + "'");
}

SubstitutionClassification classify_substitutions(const DifferentialSystem& sys, unsigned degree) {
  if (degree < 2) throw std::invalid_argument("substitution ansatz degree must be >= 2");
  SubstitutionClassification cls;
  cls.ansatz = point_monomials(degree);
  const std::size_t m = cls.ansatz.size();
  JetExpression::Builder phi, psi;
  for (std::size_t i = 0; i < m; ++i) {
    phi.add(cls.ansatz[i] * Monomial(Symbol::unknown(static_cast<std::uint32_t>(i))), Rational(1));
    psi.add(cls.ansatz[i] * Monomial(Symbol::unknown(static_cast<std::uint32_t>(m + i))), Rational(1));
    cls.problem.unknowns.push_back("phi[" + cls.ansatz[i].to_string() + "]");
  }
  for (std::size_t i = 0; i < m; ++i) cls.problem.unknowns.push_back("psi[" + cls.ansatz[i].to_string() + "]");
  auto [first, second] = substituted_adjoint(sys, std::move(phi).build(), std::move(psi).build());
  Reducer reducer(sys);
  cls.problem.equations = collect_linear_equations({reducer.reduce(first), reducer.reduce(second)}, 2 * m);
  Nullspace ns = nullspace(cls.problem.equations, 2 * m);
  cls.problem.rank = ns.rank;
  cls.problem.solution_basis = ns.basis;
  for (std::size_t k = 0; k < ns.basis.size(); ++k) {
    JetExpression::Builder bphi, bpsi;
    for (std::size_t i = 0; i < m; ++i) {
      bphi.add(cls.ansatz[i], ns.basis[k][i]);
      bpsi.add(cls.ansatz[i], ns.basis[k][m + i]);
    }
    cls.basis.push_back({std::move(bphi).build(), std::move(bpsi).build(), "S" + std::to_string(k + 1)});
  }
  if (sys.params()) cls.case_labels = substitution_cases(*sys.params());
  return cls;
}

std::optional<RationalVector> substitution_coordinates(const Substitution& sub,
                                                       const std::vector<Monomial>& ansatz) {
  const std::size_t m = ansatz.size();
  RationalVector out(2 * m, Rational(0));
  const JetExpression* parts[2] = {&sub.phi, &sub.psi};
  for (std::size_t half = 0; half < 2; ++half)
    for (const auto& [mono, c] : parts[half]->terms()) {
      auto it = std::find(ansatz.begin(), ansatz.end(), mono);
      if (it == ansatz.end()) return std::nullopt;
      out[half * m + static_cast<std::size_t>(it - ansatz.begin())] = c;
    }
  return out;
}

Substitution case_substitution(const std::string& case_label, const SystemParameters& params,
                               const std::array<Rational, 5>& constants) {
  const auto& [c1, c2, c3, c4, c5] = constants;
  const JetExpression t = JetExpression::symbol(Symbol::t());
  const JetExpression x = JetExpression::symbol(Symbol::x());
  const JetExpression u = var(Dependent::u), v = var(Dependent::v);
  if (case_label == "i") return {c3 * u + JetExpression(c4), c3 * v + JetExpression(c5), "i"};
  if (case_label == "ii") {
    const JetExpression common = (2 * params.a * c1 * t + JetExpression(c2)) * (v + u) - c1 * x;
    return {common + JetExpression(c4), common + JetExpression(c5), "ii"};
  }
  if (case_label == "iii") return {JetExpression(c4), JetExpression(c5), "iii"};
  throw std::invalid_argument("unknown case label '" + case_label + "'");
}

namespace {

std::vector<int> case_constants(const std::string& label) {
  if (label == "i") return {3, 4, 5};
  if (label == "ii") return {1, 2, 4, 5};
  if (label == "iii") return {4, 5};
  throw std::invalid_argument("unknown case label '" + label + "'");
}

}  // namespace

Substitution named_substitution(const std::string& name, const SystemParameters& params) {
  auto dot = name.find(".c");
  if (dot == std::string::npos) throw std::invalid_argument("substitution name must look like 'ii.c1'");
  const std::string label = name.substr(0, dot);
  const std::string index_text = name.substr(dot + 2);
  if (index_text.size() != 1 || index_text[0] < '1' || index_text[0] > '5')
    throw std::invalid_argument("unknown substitution name '" + name + "'");
  const int k = index_text[0] - '0';
  auto valid = case_constants(label);
  if (std::find(valid.begin(), valid.end(), k) == valid.end())
    throw std::invalid_argument("constant c" + index_text + " is not free in case " + label);
  const auto cases = substitution_cases(params);
  if (std::find(cases.begin(), cases.end(), label) == cases.end())
    throw ParameterError("case " + label + " does not apply to these parameters");
  std::array<Rational, 5> constants{};
  constants[static_cast<std::size_t>(k - 1)] = 1;
  Substitution s = case_substitution(label, params, constants);
  s.label = name;
  return s;
}

std::vector<std::string> named_substitution_names(const SystemParameters& params) {
  std::vector<std::string> out;
  for (const auto& label : substitution_cases(params))
    for (int k : case_constants(label)) out.push_back(label + ".c" + std::to_string(k));
  return out;
}

StrictReport strict_self_adjointness(const DifferentialSystem& sys) {
  StrictReport out;
  out.residuals = self_adjointness_residual(sys, {var(Dependent::u), var(Dependent::v), "strict"});
  out.strict = out.residuals.first.is_zero && out.residuals.second.is_zero;
  out.flux_symmetric = partial_derivative(sys.flux_r(), Symbol::jet(coord(Dependent::v))) ==
                       partial_derivative(sys.flux_s(), Symbol::jet(coord(Dependent::u)));
  return out;
}

}  // namespace gslab
