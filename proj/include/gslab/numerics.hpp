#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gslab/expression.hpp"
#include "gslab/system.hpp"

namespace gslab {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the solution stops being finite; carries the time of the
/// failing step and the largest amplitude of the last finite state.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double time, double max_amplitude);
  double time() const { return time_; }
  double max_amplitude() const { return max_amplitude_; }

 private:
  double time_;
  double max_amplitude_;
};

/// Uniform periodic grid on [0, L): x_j = j L / N, N a power of two >= 16.
class Grid {
 public:
  Grid(std::size_t n, double length);

  std::size_t size() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n_); }
  double node(std::size_t j) const { return static_cast<double>(j) * spacing(); }
  /// Wavenumber 2 pi m / L of the non-negative half-spectrum index m.
  double wavenumber(std::size_t m) const;
  /// Highest retained mode index under the 2/3 rule.
  std::size_t dealias_cutoff() const { return n_ / 3; }

 private:
  std::size_t n_;
  double length_;
};

struct FieldState {
  std::vector<double> u;
  std::vector<double> v;
  double time = 0.0;
};

/// Double-precision evaluator for a polynomial in t, x, u, v and the
/// x-derivatives of u and v.
class CompiledDensity {
 public:
  explicit CompiledDensity(const JetExpression& density);

  unsigned max_x_order() const { return max_order_; }
  /// Pointwise values; `u_derivs[k]` holds d^k u / dx^k on the grid.
  std::vector<double> evaluate(double time, const Grid& grid,
                               const std::vector<std::vector<double>>& u_derivs,
                               const std::vector<std::vector<double>>& v_derivs) const;

 private:
  struct Slot {
    enum class Kind { t, x, u, v } kind;
    unsigned order;
  };
  struct Term {
    double coefficient;
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };
  std::vector<Slot> slots_;
  std::vector<Term> terms_;
  unsigned max_order_ = 0;
};

/// Fourier pseudo-spectral solver with integrating-factor RK4 and 2/3 dealiasing.
class SpectralSolver {
 public:
  /// With linear_only the flux is dropped and only u_t + c u_xxx = 0 is
  /// integrated (validation mode).
  SpectralSolver(const DifferentialSystem& sys, Grid grid, bool linear_only = false);
  ~SpectralSolver();
  SpectralSolver(const SpectralSolver&) = delete;
  SpectralSolver& operator=(const SpectralSolver&) = delete;

  const Grid& grid() const { return grid_; }

  /// Removes modes above the dealiasing cutoff.
  FieldState project(const FieldState& state) const;
  FieldState step(const FieldState& state, double dt) const;

  /// Spectral derivative of the given order.
  std::vector<double> derivative(const std::vector<double>& f, unsigned order) const;

  double evaluate_functional(const FieldState& state, const CompiledDensity& density) const;

 private:
  using Spectrum = std::vector<std::complex<double>>;

  Spectrum forward(const std::vector<double>& f) const;
  std::vector<double> inverse(const Spectrum& f) const;
  std::pair<Spectrum, Spectrum> nonlinear(const Spectrum& uh, const Spectrum& vh) const;

  Grid grid_;
  CompiledDensity flux_r_;
  CompiledDensity flux_s_;
  double c_;
  bool linear_only_;
  std::vector<double> mask_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

/// Evaluates the integral of density over the grid with the rectangle rule.
double evaluate_functional(const FieldState& state, const JetExpression& density, const Grid& grid);

/// Initial profile: A sin(2 pi m x / L) + offset, A cos(...) + offset, or a
/// Gaussian bump A exp(-((x - center)/width)^2) + offset truncated to [0, L).
struct Profile {
  enum class Kind { sine, cosine, gauss, zero };
  Kind kind = Kind::zero;
  double amplitude = 0.0;
  int mode = 1;
  double offset = 0.0;
  double center = -1.0;  // negative: L/2
  double width = 1.0;
  std::string text;

  std::vector<double> sample(const Grid& grid) const;
};

Profile parse_profile(std::string_view text);

struct RunConfig {
  std::size_t n = 256;
  double length = 6.283185307179586;
  double dt = 1e-3;
  double horizon = 5.0;
  std::size_t stride = 100;
  SystemParameters params;
  /// Parameter values as written in the file.
  std::string a_text = "1", b_text = "0", c_text = "1", p_text = "1";
  Profile u0;
  Profile v0;
  std::vector<std::string> densities;
  bool linear_only = false;
  /// Optional bounds: relative drift of the listed densities, absolute drift
  /// of the mass functionals.
  std::optional<double> tolerance;
  std::optional<double> mass_tolerance;
};

/// Plain-text "key = value" lines; '#' starts a comment. Keys: N, L, dt, T,
/// stride, a, b, c, p, u0, v0, densities (comma-separated expressions),
/// linear (true/false), tolerance, mass_tolerance.
RunConfig parse_run_config(std::string_view text);

struct FunctionalSeries {
  std::string label;
  std::vector<std::pair<double, double>> samples;  // (time, value)

  double max_abs_drift() const;
  /// max |F(t) - F(0)| / |F(0)|; falls back to the absolute drift when
  /// |F(0)| < 1e-14.
  double max_relative_drift() const;
};

struct RunResult {
  std::vector<std::size_t> steps;
  std::vector<FunctionalSeries> series;
  FieldState final_state;
};

/// Integrates to the horizon, sampling every `stride` steps (and at the
/// end). Mass densities u and v are always monitored first.
RunResult run_with_monitors(const DifferentialSystem& sys, const RunConfig& config);

/// Header "step,time,<label>..." then one row per sample.
void write_csv(std::ostream& out, const RunResult& result);

}  // namespace gslab
