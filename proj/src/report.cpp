#include "gslab/report.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ostream>
#include <map>
#include <sstream>

#include "gslab/conservation.hpp"
#include "gslab/numerics.hpp"
#include "gslab/parser.hpp"
#include "gslab/reproduce.hpp"

namespace gslab {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// "k1=v1,k2=v2" with keys restricted to `keys`; returns nullopt if the text
// has no '='.
std::optional<std::map<std::string, std::string>> split_assignments(std::string_view text,
                                                                    const std::vector<std::string>& keys) {
  if (text.find('=') == std::string_view::npos) return std::nullopt;
  std::map<std::string, std::string> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=expression in '" + item + "'");
    const std::string key = trim(std::string_view(item).substr(0, eq));
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw std::invalid_argument("unknown component '" + key + "'");
    if (out.count(key)) throw std::invalid_argument("component '" + key + "' given twice");
    out[key] = trim(std::string_view(item).substr(eq + 1));
  }
  return out;
}

const SystemParameters& require_params(const DifferentialSystem& sys, std::string_view what) {
  if (!sys.params()) throw std::invalid_argument(std::string(what) + " needs a Gardner system");
  return *sys.params();
}

json generator_json(const SymmetryGenerator& g) {
  json j = {{"T", g.T.to_string()}, {"X", g.X.to_string()}, {"U", g.U.to_string()}, {"V", g.V.to_string()}};
  if (!g.label.empty()) j["label"] = g.label;
  return j;
}

json substitution_json(const Substitution& s) {
  json j = {{"phi", s.phi.to_string()}, {"psi", s.psi.to_string()}};
  if (!s.label.empty()) j["label"] = s.label;
  return j;
}

json vector_json(const RationalVector& v) {
  json j = json::array();
  for (const auto& q : v) j.push_back(to_string(q));
  return j;
}

std::string pair_text(const std::pair<ResidualReport, ResidualReport>& r) {
  return "first: " + r.first.residual.to_string() + "; second: " + r.second.residual.to_string();
}

json problem_json(const LinearSolveProblem& p) {
  return {{"unknowns", p.unknowns.size()},
          {"equations", p.equations.size()},
          {"rank", p.rank},
          {"dimension", p.solution_basis.size()}};
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool same_generator(const SymmetryGenerator& a, const SymmetryGenerator& b) { return a == b; }

}  // namespace

SystemParameters parse_parameters(const ParameterText& text) {
  SystemParameters params;
  try {
    params.a = parse_rational(text.a);
    params.b = parse_rational(text.b);
    params.c = parse_rational(text.c);
  } catch (const std::invalid_argument& e) {
    throw ParameterError(e.what());
  }
  const std::string p = trim(text.p);
  if (p.empty() || p.size() > 6 || !std::all_of(p.begin(), p.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    throw ParameterError("p must be a positive integer, got '" + text.p + "'");
  params.p = static_cast<unsigned>(std::stoul(p));
  params.validate();
  return params;
}

SystemSpec SystemSpec::gardner(const ParameterText& text) {
  return {DifferentialSystem::gardner(parse_parameters(text)),
          {{"a", text.a}, {"b", text.b}, {"c", text.c}, {"p", text.p}}};
}

SystemSpec SystemSpec::general(const std::string& r, const std::string& s, const std::string& c) {
  Rational cv;
  try {
    cv = parse_rational(c);
  } catch (const std::invalid_argument& e) {
    throw ParameterError(e.what());
  }
  return {DifferentialSystem::general(parse(r), parse(s), cv), {{"r", r}, {"s", s}, {"c", c}}};
}

SymmetryGenerator parse_generator(std::string_view text, const DifferentialSystem& sys) {
  const std::string name = trim(text);
  const auto names = named_generator_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) {
    const unsigned p = sys.params() ? sys.params()->p : 1;
    if (!sys.params() && (name == "X1" || name == "Y1"))
      throw std::invalid_argument(name + " needs a Gardner system");
    return named_generator(name, p);
  }
  const auto parts = split_assignments(text, {"T", "X", "U", "V"});
  if (!parts) throw std::invalid_argument("unknown generator '" + name + "'");
  SymmetryGenerator g;
  for (const auto& [key, value] : *parts) {
    JetExpression e = parse(value);
    (key == "T" ? g.T : key == "X" ? g.X : key == "U" ? g.U : g.V) = std::move(e);
  }
  g.label = name;
  g.validate();
  return g;
}

Substitution parse_substitution(std::string_view text, const DifferentialSystem& sys) {
  const std::string name = trim(text);
  const auto parts = split_assignments(text, {"phi", "psi"});
  if (!parts) return named_substitution(name, require_params(sys, "named substitution"));
  Substitution s;
  if (auto it = parts->find("phi"); it != parts->end()) s.phi = parse(it->second);
  if (auto it = parts->find("psi"); it != parts->end()) s.psi = parse(it->second);
  s.label = name;
  s.validate();
  return s;
}

VerificationReport::VerificationReport(std::string command, json parameters)
    : command_(std::move(command)), parameters_(std::move(parameters)) {}

void VerificationReport::add_check(std::string name, bool pass, const std::string& residual, json derived) {
  json check = {{"name", std::move(name)}, {"status", pass ? "pass" : "fail"}};
  if (!pass && !residual.empty()) check["residual"] = residual;
  if (!derived.is_null()) check["derived"] = std::move(derived);
  checks_.push_back(std::move(check));
}

bool VerificationReport::passed() const {
  for (const auto& c : checks_)
    if (c["status"] != "pass") return false;
  return true;
}

json VerificationReport::to_json() const {
  json out = {{"command", command_}, {"parameters", parameters_}, {"status", passed() ? "pass" : "fail"},
              {"checks", checks_},   {"result", result_},         {"wall_time_s", wall_time_s_}};
  if (!timings_.empty()) out["timing_s"] = timings_;
  return out;
}

VerificationReport report_classify_symmetries(const SystemSpec& spec, unsigned degree, bool expect_table) {
  const auto start = Clock::now();
  const auto& sys = spec.system;
  VerificationReport report("classify-symmetries", spec.parameters);
  const auto cls = solve_determining(sys, degree);
  report.add_check("nullspace", cls.problem.verify(), "basis does not solve the determining system",
                   problem_json(cls.problem));
  json basis = json::array();
  json multipliers = json::array();
  for (std::size_t i = 0; i < cls.basis.size(); ++i) {
    const auto& g = cls.basis[i];
    const auto res = invariance_residual(g, sys);
    report.add_check("invariance basis[" + std::to_string(i) + "]", res.first.is_zero && res.second.is_zero,
                     pair_text(res));
    basis.push_back(generator_json(g));
    multipliers.push_back(check_multipliers(g, sys).matches_closed_form);
  }
  report.result()["degree"] = degree;
  report.result()["dimension"] = cls.basis.size();
  report.result()["basis"] = basis;
  report.result()["multipliers_match_closed_form"] = multipliers;
  if (sys.params()) {
    const auto match = match_table(cls, sys);
    json named = json::object();
    for (const auto& nc : match.named)
      named[nc.name] = nc.coordinates ? vector_json(*nc.coordinates) : json(nullptr);
    report.result()["case"] = match.expected.label;
    report.result()["named"] = named;
    if (expect_table) {
      const std::size_t expected = match.expected.generators.size();
      report.add_check("table dimension", match.computed_dimension == expected,
                       "computed " + std::to_string(match.computed_dimension) + ", expected " +
                           std::to_string(expected),
                       {{"computed", match.computed_dimension}, {"expected", expected}});
      for (const auto& nc : match.named)
        report.add_check("contains " + nc.name, nc.coordinates.has_value(), nc.name + " is not in the span");
    }
  }
  report.set_wall_time(seconds_since(start));
  return report;
}

VerificationReport report_classify_substitutions(const SystemSpec& spec, unsigned degree, bool expect_table) {
  const auto start = Clock::now();
  const auto& sys = spec.system;
  VerificationReport report("classify-substitutions", spec.parameters);
  const auto cls = classify_substitutions(sys, degree);
  report.add_check("nullspace", cls.problem.verify(), "basis does not solve the linear system",
                   problem_json(cls.problem));
  json basis = json::array();
  for (std::size_t i = 0; i < cls.basis.size(); ++i) {
    const auto res = self_adjointness_residual(sys, cls.basis[i]);
    report.add_check("self-adjointness basis[" + std::to_string(i) + "]", res.first.is_zero && res.second.is_zero,
                     pair_text(res));
    basis.push_back(substitution_json(cls.basis[i]));
  }
  const auto strict = strict_self_adjointness(sys);
  report.result()["degree"] = degree;
  report.result()["dimension"] = cls.basis.size();
  report.result()["basis"] = basis;
  report.result()["strict"] = strict.strict;
  report.result()["flux_symmetric"] = strict.flux_symmetric;
  if (sys.params()) {
    report.result()["case"] = cls.case_labels;
    json named = json::object();
    for (const auto& name : named_substitution_names(*sys.params())) {
      const auto sub = named_substitution(name, *sys.params());
      std::optional<RationalVector> in_span;
      if (auto coords = substitution_coordinates(sub, cls.ansatz))
        in_span = solve_in_span(cls.problem.solution_basis, *coords);
      named[name] = {{"phi", sub.phi.to_string()},
                     {"psi", sub.psi.to_string()},
                     {"coordinates", in_span ? vector_json(*in_span) : json(nullptr)}};
      if (expect_table) report.add_check("contains " + name, in_span.has_value(), name + " is not in the span");
    }
    report.result()["named"] = named;
    if (expect_table) {
      const std::size_t expected = expected_substitution_dimension(cls.case_labels.front());
      report.add_check("case dimension", cls.basis.size() == expected,
                       "computed " + std::to_string(cls.basis.size()) + ", expected " + std::to_string(expected),
                       {{"computed", cls.basis.size()}, {"expected", expected}});
    }
  }
  report.set_wall_time(seconds_since(start));
  return report;
}

VerificationReport report_verify_symmetry(const SystemSpec& spec, std::string_view generator) {
  const auto start = Clock::now();
  const auto& sys = spec.system;
  VerificationReport report("verify-symmetry", spec.parameters);
  const auto g = parse_generator(generator, sys);
  const auto res = invariance_residual(g, sys);
  report.add_check("invariance first", res.first.is_zero, res.first.residual.to_string());
  report.add_check("invariance second", res.second.is_zero, res.second.residual.to_string());
  const auto w = characteristic(g);
  const auto mult = check_multipliers(g, sys);
  report.result()["generator"] = generator_json(g);
  report.result()["characteristic"] = {{"Wu", w.Wu.to_string()}, {"Wv", w.Wv.to_string()}};
  report.result()["multipliers"] = {{"M", mult.M.to_string()},
                                    {"N", mult.N.to_string()},
                                    {"P", mult.P.to_string()},
                                    {"Q", mult.Q.to_string()},
                                    {"first_order_only", mult.first_order_only},
                                    {"matches_closed_form", mult.matches_closed_form}};
  report.set_wall_time(seconds_since(start));
  return report;
}

VerificationReport report_adjoint(const SystemSpec& spec, std::string_view substitution) {
  const auto start = Clock::now();
  const auto& sys = spec.system;
  VerificationReport report("adjoint", spec.parameters);
  const auto adj = adjoint_system(sys);
  const auto closed = adjoint_closed_form(sys);
  report.add_check("adjoint closed form", adj.F1star == closed.F1star && adj.F2star == closed.F2star,
                   "first: " + (adj.F1star - closed.F1star).to_string() +
                       "; second: " + (adj.F2star - closed.F2star).to_string());
  const auto strict = strict_self_adjointness(sys);
  report.result()["lagrangian"] = formal_lagrangian(sys).L.to_string();
  report.result()["F1star"] = adj.F1star.to_string();
  report.result()["F2star"] = adj.F2star.to_string();
  report.result()["strict"] = strict.strict;
  report.result()["flux_symmetric"] = strict.flux_symmetric;
  if (!trim(substitution).empty()) {
    const auto sub = parse_substitution(substitution, sys);
    const auto res = self_adjointness_residual(sys, sub);
    report.add_check("self-adjointness first", res.first.is_zero, res.first.residual.to_string());
    report.add_check("self-adjointness second", res.second.is_zero, res.second.residual.to_string());
    report.result()["substitution"] = substitution_json(sub);
  }
  report.set_wall_time(seconds_since(start));
  return report;
}

VerificationReport report_conserved(const SystemSpec& spec, std::string_view generator,
                                    std::string_view substitution) {
  const auto start = Clock::now();
  const auto& sys = spec.system;
  VerificationReport report("conserved", spec.parameters);
  const auto g = parse_generator(generator, sys);
  const auto sub = parse_substitution(substitution, sys);
  report.result()["generator"] = generator_json(g);
  report.result()["substitution"] = substitution_json(sub);

  const auto inv = invariance_residual(g, sys);
  const bool symmetric = inv.first.is_zero && inv.second.is_zero;
  report.add_check("generator is a symmetry", symmetric, pair_text(inv));
  const auto adm = self_adjointness_residual(sys, sub);
  const bool admissible = adm.first.is_zero && adm.second.is_zero;
  report.add_check("substitution is admissible", admissible, pair_text(adm));
  if (!symmetric || !admissible) {
    report.set_wall_time(seconds_since(start));
    return report;
  }

  const auto cv = ibragimov_vector(g, sub, sys);
  const auto div = divergence_residual(cv, sys);
  report.add_check("divergence", div.is_zero, div.residual.to_string());
  const auto sig = density_signature(cv, sys);
  report.result()["Ct"] = cv.Ct.to_string();
  report.result()["Cx"] = cv.Cx.to_string();
  report.result()["signature"] = {
      {"u", sig.sig_u.to_string()}, {"v", sig.sig_v.to_string()}, {"trivial", sig.is_zero()}};

  if (sys.params()) {
    const auto& params = *sys.params();
    json references = json::array();
    for (const auto& pairing : reference_pairings(params)) {
      if (!same_generator(named_generator(pairing.generator, params.p), g) ||
          pairing.substitution.phi != sub.phi || pairing.substitution.psi != sub.psi)
        continue;
      const auto ref = reference_vector(pairing.case_label, params);
      const auto lambda = equivalent_up_to_trivial(cv, ref, sys);
      report.add_check("equivalent to reference " + pairing.case_label, lambda.has_value(),
                       "constructed signature is not proportional to that of " + ref.Ct.to_string(),
                       lambda ? json{{"lambda", to_string(*lambda)}} : json(nullptr));
      references.push_back({{"case", pairing.case_label},
                            {"Ct", ref.Ct.to_string()},
                            {"Cx", ref.Cx.to_string()},
                            {"lambda", lambda ? json(to_string(*lambda)) : json(nullptr)}});
    }
    report.result()["references"] = references;
  }
  report.set_wall_time(seconds_since(start));
  return report;
}

VerificationReport report_check_divergence(const SystemSpec& spec, std::string_view ct, std::string_view cx) {
  const auto start = Clock::now();
  VerificationReport report("check-divergence", spec.parameters);
  const ConservedVector cv{parse(ct), parse(cx), "input"};
  const auto res = divergence_residual(cv, spec.system);
  report.add_check("divergence", res.is_zero, res.residual.to_string());
  const auto sig = density_signature(cv, spec.system);
  report.result()["Ct"] = cv.Ct.to_string();
  report.result()["Cx"] = cv.Cx.to_string();
  report.result()["signature"] = {
      {"u", sig.sig_u.to_string()}, {"v", sig.sig_v.to_string()}, {"trivial", sig.is_zero()}};
  report.set_wall_time(seconds_since(start));
  return report;
}

VerificationReport report_simulate(std::string_view config_text, std::ostream* csv) {
  const auto start = Clock::now();
  const auto cfg = parse_run_config(config_text);
  const json parameters = {{"a", cfg.a_text}, {"b", cfg.b_text}, {"c", cfg.c_text}, {"p", cfg.p_text}};
  VerificationReport report("simulate", parameters);
  const DifferentialSystem sys =
      cfg.linear_only ? DifferentialSystem::general(0, 0, cfg.params.c) : DifferentialSystem::gardner(cfg.params);
  report.result()["grid"] = {{"N", cfg.n}, {"L", cfg.length}, {"dt", cfg.dt}, {"T", cfg.horizon}};
  report.result()["profiles"] = {{"u0", cfg.u0.text}, {"v0", cfg.v0.text}};
  RunResult run;
  try {
    run = run_with_monitors(sys, cfg);
  } catch (const BlowUpError& e) {
    std::ostringstream os;
    os << "non-finite solution at t=" << e.time() << ", max amplitude " << e.max_amplitude();
    report.add_check("run completed", false, os.str());
    report.set_wall_time(seconds_since(start));
    return report;
  }
  report.add_check("run completed", true);
  if (csv) write_csv(*csv, run);

  json functionals = json::array();
  for (std::size_t i = 0; i < run.series.size(); ++i) {
    const auto& s = run.series[i];
    const bool mass = i < 2;
    functionals.push_back({{"label", s.label},
                           {"initial", s.samples.front().second},
                           {"final", s.samples.back().second},
                           {"max_abs_drift", s.max_abs_drift()},
                           {"max_relative_drift", s.max_relative_drift()}});
    if (mass && cfg.mass_tolerance) {
      report.add_check("mass drift " + s.label, s.max_abs_drift() < *cfg.mass_tolerance,
                       "absolute drift " + std::to_string(s.max_abs_drift()),
                       {{"drift", s.max_abs_drift()}, {"bound", *cfg.mass_tolerance}});
    } else if (!mass && cfg.tolerance) {
      report.add_check("drift " + s.label, s.max_relative_drift() < *cfg.tolerance,
                       "relative drift " + std::to_string(s.max_relative_drift()),
                       {{"drift", s.max_relative_drift()}, {"bound", *cfg.tolerance}});
    }
  }
  report.result()["steps"] = run.steps.empty() ? 0 : run.steps.back();
  report.result()["functionals"] = functionals;
  report.set_wall_time(seconds_since(start));
  return report;
}

VerificationReport report_reproduce(unsigned jobs, std::uint64_t seed) {
  const auto start = Clock::now();
  VerificationReport report("reproduce-paper", {{"jobs", jobs}, {"seed", seed}});
  ReproduceOptions options;
  options.jobs = jobs;
  options.seed = seed;
  for (const auto& c : reproduce_all(options)) {
    report.add_check(c.id, c.pass, c.detail, {{"title", c.title}, {"detail", c.detail}});
    report.set_timing(c.id, c.seconds);
  }
  report.set_wall_time(seconds_since(start));
  return report;
}

}  // namespace gslab
