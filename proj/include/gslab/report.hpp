#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gslab/adjoint.hpp"
#include "gslab/symmetry.hpp"
#include "gslab/system.hpp"

namespace gslab {

/// Parameters as typed by the user; echoed verbatim in reports.
struct ParameterText {
  std::string a = "1";
  std::string b = "0";
  std::string c = "1";
  std::string p = "1";
};

/// Throws ParameterError for malformed or inadmissible values.
SystemParameters parse_parameters(const ParameterText& text);

/// A system together with the parameter echo used in its reports.
struct SystemSpec {
  DifferentialSystem system;
  nlohmann::json parameters;

  static SystemSpec gardner(const ParameterText& text);
  /// Fluxes r, s given as expressions in u and v.
  static SystemSpec general(const std::string& r, const std::string& s, const std::string& c);
};

/// A generator name (X1, Y1, X2, X3, X4, Y4, X5) or "T=..,X=..,U=..,V=.."
/// with omitted components zero.
SymmetryGenerator parse_generator(std::string_view text, const DifferentialSystem& sys);

/// A substitution name such as "i.c3" or "phi=..,psi=..".
Substitution parse_substitution(std::string_view text, const DifferentialSystem& sys);

class VerificationReport {
 public:
  VerificationReport(std::string command, nlohmann::json parameters);

  /// `residual` is kept only for failing checks.
  void add_check(std::string name, bool pass, const std::string& residual = {},
                 nlohmann::json derived = nullptr);
  nlohmann::json& result() { return result_; }
  bool passed() const;
  void set_wall_time(double seconds) { wall_time_s_ = seconds; }
  void set_timing(const std::string& name, double seconds) { timings_[name] = seconds; }

  /// {command, parameters, status, checks, result, wall_time_s[, timing_s]}.
  /// Everything except the timings is deterministic for fixed inputs.
  nlohmann::json to_json() const;

 private:
  std::string command_;
  nlohmann::json parameters_;
  nlohmann::json checks_ = nlohmann::json::array();
  nlohmann::json result_ = nlohmann::json::object();
  double wall_time_s_ = 0.0;
  nlohmann::json timings_ = nlohmann::json::object();
};

VerificationReport report_classify_symmetries(const SystemSpec& spec, unsigned degree, bool expect_table);
VerificationReport report_classify_substitutions(const SystemSpec& spec, unsigned degree, bool expect_table);
VerificationReport report_verify_symmetry(const SystemSpec& spec, std::string_view generator);
/// `substitution` may be empty.
VerificationReport report_adjoint(const SystemSpec& spec, std::string_view substitution);
VerificationReport report_conserved(const SystemSpec& spec, std::string_view generator,
                                    std::string_view substitution);
VerificationReport report_check_divergence(const SystemSpec& spec, std::string_view ct, std::string_view cx);
/// Runs the configured simulation; the series is written to `csv` when given.
VerificationReport report_simulate(std::string_view config_text, std::ostream* csv);
VerificationReport report_reproduce(unsigned jobs, std::uint64_t seed);

}  // namespace gslab
