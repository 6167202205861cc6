#include "gslab/numerics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "gslab/parser.hpp"

namespace gslab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The FFTW planner is not thread-safe; execution with the new-array
// interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Fft {
 public:
  explicit Fft(std::size_t n) : n_(n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    double* real = fftw_alloc_real(n);
    fftw_complex* spec = fftw_alloc_complex(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int size = static_cast<int>(n);
    r2c_ = fftw_plan_dft_r2c_1d(size, real, spec, flags);
    c2r_ = fftw_plan_dft_c2r_1d(size, spec, real, flags);
    fftw_free(real);
    fftw_free(spec);
  }
  ~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::vector<std::complex<double>> forward(const std::vector<double>& f) const {
    std::vector<double> in = f;
    std::vector<std::complex<double>> out(n_ / 2 + 1);
    fftw_execute_dft_r2c(r2c_, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
  }

  std::vector<double> inverse(const std::vector<std::complex<double>>& spec) const {
    std::vector<std::complex<double>> in = spec;  // c2r overwrites its input
    std::vector<double> out(n_);
    fftw_execute_dft_c2r(c2r_, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& x : out) x *= scale;
    return out;
  }

 private:
  std::size_t n_;
  fftw_plan r2c_;
  fftw_plan c2r_;
};

std::vector<double> spectral_derivative(const Fft& fft, const Grid& grid, const std::vector<double>& f,
                                        unsigned order) {
  if (order == 0) return f;
  auto spec = fft.forward(f);
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t m = 0; m < spec.size(); ++m) {
    if (m == grid.size() / 2) {
      spec[m] = 0.0;
      continue;
    }
    spec[m] *= std::pow(i * grid.wavenumber(m), static_cast<int>(order));
  }
  return fft.inverse(spec);
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

double parse_real(std::string_view text, const std::string& what) {
  std::string s = trim(text);
  double scale = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    scale = kPi;
    s = trim(std::string_view(s).substr(0, s.size() - 2));
    if (!s.empty() && s.back() == '*') s = trim(std::string_view(s).substr(0, s.size() - 1));
    if (s.empty()) return scale;
  }
  try {
    std::size_t used = 0;
    double value = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(value)) throw std::invalid_argument("not finite");
    return value * scale;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + what + ": '" + std::string(text) + "'");
  }
}

std::size_t parse_count(std::string_view text, const std::string& what) {
  std::string s = trim(text);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    throw ConfigError("invalid integer for " + what + ": '" + std::string(text) + "'");
  return static_cast<std::size_t>(std::stoull(s));
}

}  // namespace

BlowUpError::BlowUpError(double time, double max_amplitude)
    : std::runtime_error("non-finite solution at t=" + std::to_string(time) +
                         " (max amplitude " + std::to_string(max_amplitude) + ")"),
      time_(time),
      max_amplitude_(max_amplitude) {}

Grid::Grid(std::size_t n, double length) : n_(n), length_(length) {
  if (n < 16 || (n & (n - 1)) != 0) throw ConfigError("N must be a power of two >= 16, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("L must be a positive finite length");
}

double Grid::wavenumber(std::size_t m) const { return 2.0 * kPi * static_cast<double>(m) / length_; }

CompiledDensity::CompiledDensity(const JetExpression& density) {
  std::map<Symbol, std::size_t> slot_of;
  for (Symbol s : density.symbols()) {
    Slot slot{};
    switch (s.kind()) {
      case Symbol::Kind::t: slot = {Slot::Kind::t, 0}; break;
      case Symbol::Kind::x: slot = {Slot::Kind::x, 0}; break;
      case Symbol::Kind::jet: {
        JetCoordinate c = s.coordinate();
        if (c.t_order > 0 || (c.dependent != Dependent::u && c.dependent != Dependent::v))
          throw std::invalid_argument("density references unsupported coordinate " + s.name());
        slot = {c.dependent == Dependent::u ? Slot::Kind::u : Slot::Kind::v, c.x_order};
        max_order_ = std::max(max_order_, c.x_order);
        break;
      }
      case Symbol::Kind::unknown:
        throw std::invalid_argument("density references unsupported symbol " + s.name());
    }
    slot_of[s] = slots_.size();
    slots_.push_back(slot);
  }
  for (const auto& [m, c] : density.terms()) {
    Term term{c.get_d(), {}};
    for (const auto& [sym, k] : m.factors()) term.factors.emplace_back(slot_of.at(sym), k);
    terms_.push_back(std::move(term));
  }
}

std::vector<double> CompiledDensity::evaluate(double time, const Grid& grid,
                                              const std::vector<std::vector<double>>& u_derivs,
                                              const std::vector<std::vector<double>>& v_derivs) const {
  const std::size_t n = grid.size();
  std::vector<double> out(n, 0.0);
  std::vector<double> values(slots_.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      switch (slots_[s].kind) {
        case Slot::Kind::t: values[s] = time; break;
        case Slot::Kind::x: values[s] = grid.node(j); break;
        case Slot::Kind::u: values[s] = u_derivs.at(slots_[s].order)[j]; break;
        case Slot::Kind::v: values[s] = v_derivs.at(slots_[s].order)[j]; break;
      }
    }
    double acc = 0.0;
    for (const auto& term : terms_) {
      double prod = term.coefficient;
      for (const auto& [slot, k] : term.factors)
        for (unsigned e = 0; e < k; ++e) prod *= values[slot];
      acc += prod;
    }
    out[j] = acc;
  }
  return out;
}

struct SpectralSolver::Plans {
  explicit Plans(std::size_t n) : fft(n) {}
  Fft fft;
};

SpectralSolver::SpectralSolver(const DifferentialSystem& sys, Grid grid, bool linear_only)
    : grid_(grid),
      flux_r_(sys.flux_r()),
      flux_s_(sys.flux_s()),
      c_(sys.c().get_d()),
      linear_only_(linear_only),
      plans_(std::make_unique<Plans>(grid.size())) {
  mask_.assign(grid_.size() / 2 + 1, 0.0);
  for (std::size_t m = 0; m < mask_.size(); ++m) mask_[m] = m <= grid_.dealias_cutoff() ? 1.0 : 0.0;
}

SpectralSolver::~SpectralSolver() = default;

SpectralSolver::Spectrum SpectralSolver::forward(const std::vector<double>& f) const {
  return plans_->fft.forward(f);
}

std::vector<double> SpectralSolver::inverse(const Spectrum& f) const { return plans_->fft.inverse(f); }

FieldState SpectralSolver::project(const FieldState& state) const {
  auto clip = [&](const std::vector<double>& f) {
    auto spec = forward(f);
    for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= mask_[m];
    return inverse(spec);
  };
  return {clip(state.u), clip(state.v), state.time};
}

std::pair<SpectralSolver::Spectrum, SpectralSolver::Spectrum> SpectralSolver::nonlinear(
    const Spectrum& uh, const Spectrum& vh) const {
  const std::size_t half = uh.size();
  if (linear_only_) return {Spectrum(half), Spectrum(half)};
  const std::vector<std::vector<double>> u{inverse(uh)};
  const std::vector<std::vector<double>> v{inverse(vh)};
  Spectrum rh = forward(flux_r_.evaluate(0.0, grid_, u, v));
  Spectrum sh = forward(flux_s_.evaluate(0.0, grid_, u, v));
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t m = 0; m < half; ++m) {
    const std::complex<double> factor = -i * grid_.wavenumber(m) * mask_[m];
    rh[m] *= factor;
    sh[m] *= factor;
  }
  return {std::move(rh), std::move(sh)};
}

FieldState SpectralSolver::step(const FieldState& state, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const std::size_t half = grid_.size() / 2 + 1;
  // Linear part c d^3/dx^3 in spectral space: u_hat' = i c k^3 u_hat.
  Spectrum e1(half), e2(half);
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t m = 0; m < half; ++m) {
    const double k = grid_.wavenumber(m);
    e1[m] = std::exp(i * c_ * k * k * k * (dt / 2.0));
    e2[m] = e1[m] * e1[m];
  }
  Spectrum uh = forward(state.u), vh = forward(state.v);
  for (std::size_t m = 0; m < half; ++m) {
    uh[m] *= mask_[m];
    vh[m] *= mask_[m];
  }
  Spectrum tu(half), tv(half);
  auto [k1u, k1v] = nonlinear(uh, vh);
  for (std::size_t m = 0; m < half; ++m) {
    tu[m] = e1[m] * (uh[m] + 0.5 * dt * k1u[m]);
    tv[m] = e1[m] * (vh[m] + 0.5 * dt * k1v[m]);
  }
  auto [k2u, k2v] = nonlinear(tu, tv);
  for (std::size_t m = 0; m < half; ++m) {
    tu[m] = e1[m] * uh[m] + 0.5 * dt * k2u[m];
    tv[m] = e1[m] * vh[m] + 0.5 * dt * k2v[m];
  }
  auto [k3u, k3v] = nonlinear(tu, tv);
  for (std::size_t m = 0; m < half; ++m) {
    tu[m] = e2[m] * uh[m] + dt * e1[m] * k3u[m];
    tv[m] = e2[m] * vh[m] + dt * e1[m] * k3v[m];
  }
  auto [k4u, k4v] = nonlinear(tu, tv);
  for (std::size_t m = 0; m < half; ++m) {
    uh[m] = mask_[m] * (e2[m] * uh[m] +
                        dt / 6.0 * (e2[m] * k1u[m] + 2.0 * e1[m] * (k2u[m] + k3u[m]) + k4u[m]));
    vh[m] = mask_[m] * (e2[m] * vh[m] +
                        dt / 6.0 * (e2[m] * k1v[m] + 2.0 * e1[m] * (k2v[m] + k3v[m]) + k4v[m]));
  }
  FieldState next{inverse(uh), inverse(vh), state.time + dt};
  auto finite = [](const std::vector<double>& f) {
    return std::all_of(f.begin(), f.end(), [](double value) { return std::isfinite(value); });
  };
  if (!finite(next.u) || !finite(next.v)) {
    // Amplitude of the last finite state.
    double amplitude = 0.0;
    for (const auto* f : {&state.u, &state.v})
      for (double value : *f) amplitude = std::max(amplitude, std::abs(value));
    throw BlowUpError(next.time, amplitude);
  }
  return next;
}

std::vector<double> SpectralSolver::derivative(const std::vector<double>& f, unsigned order) const {
  return spectral_derivative(plans_->fft, grid_, f, order);
}

namespace {

double integrate(const Fft& fft, const Grid& grid, const FieldState& state, const CompiledDensity& density) {
  std::vector<std::vector<double>> ud{state.u}, vd{state.v};
  for (unsigned k = 1; k <= density.max_x_order(); ++k) {
    ud.push_back(spectral_derivative(fft, grid, state.u, k));
    vd.push_back(spectral_derivative(fft, grid, state.v, k));
  }
  const auto values = density.evaluate(state.time, grid, ud, vd);
  double sum = 0.0;
  for (double value : values) sum += value;
  return sum * grid.spacing();
}

}  // namespace

double SpectralSolver::evaluate_functional(const FieldState& state, const CompiledDensity& density) const {
  return integrate(plans_->fft, grid_, state, density);
}

double evaluate_functional(const FieldState& state, const JetExpression& density, const Grid& grid) {
  if (state.u.size() != grid.size() || state.v.size() != grid.size())
    throw std::invalid_argument("field length does not match the grid");
  Fft fft(grid.size());
  return integrate(fft, grid, state, CompiledDensity(density));
}

std::vector<double> Profile::sample(const Grid& grid) const {
  std::vector<double> out(grid.size(), 0.0);
  const double L = grid.length();
  const double mid = center < 0.0 ? L / 2.0 : center;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    const double phase = 2.0 * kPi * mode * x / L;
    switch (kind) {
      case Kind::sine: out[j] = amplitude * std::sin(phase) + offset; break;
      case Kind::cosine: out[j] = amplitude * std::cos(phase) + offset; break;
      case Kind::gauss: {
        const double z = (x - mid) / width;
        out[j] = amplitude * std::exp(-z * z) + offset;
        break;
      }
      case Kind::zero: out[j] = 0.0; break;
    }
  }
  return out;
}

Profile parse_profile(std::string_view text) {
  Profile prof;
  prof.text = trim(text);
  const std::string s = prof.text;
  if (s == "zero" || s == "0") return prof;
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw ConfigError("profile must look like sin(amplitude=0.1, mode=1, offset=0): '" + s + "'");
  const std::string kind = trim(std::string_view(s).substr(0, open));
  if (kind == "sin")
    prof.kind = Profile::Kind::sine;
  else if (kind == "cos")
    prof.kind = Profile::Kind::cosine;
  else if (kind == "gauss")
    prof.kind = Profile::Kind::gauss;
  else
    throw ConfigError("unknown profile kind '" + kind + "' (expected sin, cos, gauss or zero)");
  std::string args = s.substr(open + 1, s.size() - open - 2);
  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("profile argument needs key=value: '" + item + "'");
    const std::string key = trim(std::string_view(item).substr(0, eq));
    const std::string value = trim(std::string_view(item).substr(eq + 1));
    if (key == "amplitude" || key == "A")
      prof.amplitude = parse_real(value, key);
    else if (key == "mode" || key == "m")
      prof.mode = static_cast<int>(parse_count(value, key));
    else if (key == "offset")
      prof.offset = parse_real(value, key);
    else if (key == "center")
      prof.center = parse_real(value, key);
    else if (key == "width") {
      prof.width = parse_real(value, key);
      if (!(prof.width > 0.0)) throw ConfigError("gauss width must be positive");
    } else
      throw ConfigError("unknown profile argument '" + key + "'");
  }
  return prof;
}

RunConfig parse_run_config(std::string_view text) {
  RunConfig cfg;
  std::stringstream ss{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "N")
      cfg.n = parse_count(value, key);
    else if (key == "L")
      cfg.length = parse_real(value, key);
    else if (key == "dt")
      cfg.dt = parse_real(value, key);
    else if (key == "T")
      cfg.horizon = parse_real(value, key);
    else if (key == "stride")
      cfg.stride = parse_count(value, key);
    else if (key == "a")
      cfg.a_text = value;
    else if (key == "b")
      cfg.b_text = value;
    else if (key == "c")
      cfg.c_text = value;
    else if (key == "p")
      cfg.p_text = value;
    else if (key == "u0")
      cfg.u0 = parse_profile(value);
    else if (key == "v0")
      cfg.v0 = parse_profile(value);
    else if (key == "densities") {
      cfg.densities.clear();
      std::stringstream ds(value);
      std::string item;
      while (std::getline(ds, item, ','))
        if (!trim(item).empty()) cfg.densities.push_back(trim(item));
    } else if (key == "linear") {
      if (value == "true" || value == "1")
        cfg.linear_only = true;
      else if (value == "false" || value == "0")
        cfg.linear_only = false;
      else
        throw ConfigError("linear must be true or false");
    } else if (key == "tolerance") {
      cfg.tolerance = parse_real(value, key);
    } else if (key == "mass_tolerance") {
      cfg.mass_tolerance = parse_real(value, key);
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  try {
    cfg.params.a = parse_rational(cfg.a_text);
    cfg.params.b = parse_rational(cfg.b_text);
    cfg.params.c = parse_rational(cfg.c_text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("parameter: ") + e.what());
  }
  const std::size_t p = parse_count(cfg.p_text, "p");
  if (p < 1) throw ParameterError("p must be a positive integer");
  cfg.params.p = static_cast<unsigned>(p);
  Grid check(cfg.n, cfg.length);
  (void)check;
  if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(cfg.horizon > 0.0)) throw ConfigError("T must be positive");
  if (cfg.stride == 0) throw ConfigError("stride must be positive");
  for (const auto& d : cfg.densities) {
    try {
      CompiledDensity probe(parse(d));
    } catch (const std::exception& e) {
      throw ConfigError("density '" + d + "': " + e.what());
    }
  }
  return cfg;
}

double FunctionalSeries::max_abs_drift() const {
  double drift = 0.0;
  if (samples.empty()) return drift;
  for (const auto& [t, value] : samples) drift = std::max(drift, std::abs(value - samples.front().second));
  return drift;
}

double FunctionalSeries::max_relative_drift() const {
  if (samples.empty()) return 0.0;
  const double base = std::abs(samples.front().second);
  return base < 1e-14 ? max_abs_drift() : max_abs_drift() / base;
}

RunResult run_with_monitors(const DifferentialSystem& sys, const RunConfig& config) {
  const Grid grid(config.n, config.length);
  const double steps_real = config.horizon / config.dt;
  const auto total_steps = static_cast<std::size_t>(std::llround(steps_real));
  if (total_steps == 0 || std::abs(steps_real - static_cast<double>(total_steps)) > 1e-6)
    throw ConfigError("T must be a positive integer multiple of dt");
  SpectralSolver solver(sys, grid, config.linear_only);

  std::vector<std::pair<std::string, CompiledDensity>> monitors;
  monitors.emplace_back("u", CompiledDensity(JetExpression::coordinate(Dependent::u)));
  monitors.emplace_back("v", CompiledDensity(JetExpression::coordinate(Dependent::v)));
  for (const auto& text : config.densities) {
    JetExpression e = parse(text);
    std::string label = e.to_string();
    bool duplicate = false;
    for (const auto& [existing, d] : monitors) duplicate = duplicate || existing == label;
    if (!duplicate) monitors.emplace_back(label, CompiledDensity(e));
  }

  RunResult result;
  for (const auto& [label, d] : monitors) result.series.push_back({label, {}});
  auto record = [&](std::size_t step, const FieldState& state) {
    result.steps.push_back(step);
    for (std::size_t i = 0; i < monitors.size(); ++i)
      result.series[i].samples.emplace_back(state.time, solver.evaluate_functional(state, monitors[i].second));
  };

  FieldState state = solver.project({config.u0.sample(grid), config.v0.sample(grid), 0.0});
  record(0, state);
  for (std::size_t n = 1; n <= total_steps; ++n) {
    state = solver.step(state, config.dt);
    if (n % config.stride == 0 || n == total_steps) record(n, state);
  }
  result.final_state = std::move(state);
  return result;
}

void write_csv(std::ostream& out, const RunResult& result) {
  out << "step,time";
  for (const auto& s : result.series) out << ',' << s.label;
  out << '\n';
  std::ostringstream row;
  row.precision(17);
  for (std::size_t k = 0; k < result.steps.size(); ++k) {
    row.str("");
    row << result.steps[k] << ',' << result.series.front().samples[k].first;
    for (const auto& s : result.series) row << ',' << s.samples[k].second;
    out << row.str() << '\n';
  }
}

}  // namespace gslab
