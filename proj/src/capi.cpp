#include "gslab/gslab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "gslab/calculus.hpp"
#include "gslab/conservation.hpp"
#include "gslab/numerics.hpp"
#include "gslab/parser.hpp"
#include "gslab/random_expr.hpp"
#include "gslab/report.hpp"
#include "gslab/system.hpp"

struct gslab_expr {
  gslab::JetExpression value;
};

struct gslab_system {
  gslab::SystemSpec spec;
};

namespace {

thread_local std::string last_error;

gslab_status fail(gslab_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Maps exceptions from the core to status codes. Order matters: the
// specific types derive from std::invalid_argument or std::runtime_error.
template <typename F>
gslab_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const gslab::ParseError& e) {
    return fail(GSLAB_ERR_PARSE, e.what());
  } catch (const gslab::ParameterError& e) {
    return fail(GSLAB_ERR_PARAMETER, e.what());
  } catch (const gslab::ConfigError& e) {
    return fail(GSLAB_ERR_CONFIG, e.what());
  } catch (const gslab::PreconditionError& e) {
    return fail(GSLAB_ERR_PRECONDITION, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(GSLAB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GSLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GSLAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GSLAB_ERR_INTERNAL, "unknown error");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gslab_status emit(const gslab::VerificationReport& report, char** report_json, int* passed) {
  *report_json = duplicate(report.to_json().dump(2));
  *passed = report.passed() ? 1 : 0;
  return GSLAB_OK;
}

gslab_status new_expr(gslab::JetExpression value, gslab_expr** out) {
  *out = new gslab_expr{std::move(value)};
  return GSLAB_OK;
}

bool missing(const void* p) { return p == nullptr; }

gslab_status null_argument() { return fail(GSLAB_ERR_INVALID_ARGUMENT, "null argument"); }

}  // namespace

extern "C" {

const char* gslab_version(void) { return "1.0.0"; }

const char* gslab_last_error(void) { return last_error.c_str(); }

void gslab_string_free(char* s) { std::free(s); }

gslab_status gslab_expr_parse(const char* text, gslab_expr** out) {
  if (missing(text) || missing(out)) return null_argument();
  return guarded([&] { return new_expr(gslab::parse(text), out); });
}

void gslab_expr_free(gslab_expr* e) { delete e; }

gslab_status gslab_expr_to_string(const gslab_expr* e, char** out) {
  if (missing(e) || missing(out)) return null_argument();
  return guarded([&] {
    *out = duplicate(e->value.to_string());
    return GSLAB_OK;
  });
}

gslab_status gslab_expr_equal(const gslab_expr* a, const gslab_expr* b, int* out) {
  if (missing(a) || missing(b) || missing(out)) return null_argument();
  *out = a->value == b->value ? 1 : 0;
  return GSLAB_OK;
}

gslab_status gslab_expr_total_derivative(const gslab_expr* e, char direction, gslab_expr** out) {
  if (missing(e) || missing(out)) return null_argument();
  if (direction != 't' && direction != 'x') return fail(GSLAB_ERR_INVALID_ARGUMENT, "direction must be 't' or 'x'");
  return guarded([&] {
    return new_expr(gslab::total_derivative(e->value, direction == 't' ? gslab::Direction::t : gslab::Direction::x),
                    out);
  });
}

gslab_status gslab_expr_partial_derivative(const gslab_expr* e, const char* symbol, gslab_expr** out) {
  if (missing(e) || missing(symbol) || missing(out)) return null_argument();
  return guarded([&] {
    const auto s = gslab::parse_symbol(symbol);
    if (!s) return fail(GSLAB_ERR_INVALID_ARGUMENT, std::string("unknown symbol '") + symbol + "'");
    return new_expr(gslab::partial_derivative(e->value, *s), out);
  });
}

gslab_status gslab_expr_euler(const gslab_expr* e, const char* dependent, gslab_expr** out) {
  if (missing(e) || missing(dependent) || missing(out)) return null_argument();
  return guarded([&] {
    const std::string name = dependent;
    gslab::Dependent w;
    if (name == "u")
      w = gslab::Dependent::u;
    else if (name == "v")
      w = gslab::Dependent::v;
    else if (name == "ubar")
      w = gslab::Dependent::ubar;
    else if (name == "vbar")
      w = gslab::Dependent::vbar;
    else
      return fail(GSLAB_ERR_INVALID_ARGUMENT, "unknown dependent variable '" + name + "'");
    return new_expr(gslab::euler_operator(e->value, w), out);
  });
}

gslab_status gslab_system_gardner(const char* a, const char* b, const char* c, const char* p, gslab_system** out) {
  if (missing(a) || missing(b) || missing(c) || missing(p) || missing(out)) return null_argument();
  return guarded([&] {
    *out = new gslab_system{gslab::SystemSpec::gardner({a, b, c, p})};
    return GSLAB_OK;
  });
}

gslab_status gslab_system_general(const char* r, const char* s, const char* c, gslab_system** out) {
  if (missing(r) || missing(s) || missing(c) || missing(out)) return null_argument();
  return guarded([&] {
    *out = new gslab_system{gslab::SystemSpec::general(r, s, c)};
    return GSLAB_OK;
  });
}

void gslab_system_free(gslab_system* sys) { delete sys; }

gslab_status gslab_system_equation(const gslab_system* sys, int which, gslab_expr** out) {
  if (missing(sys) || missing(out)) return null_argument();
  if (which != 1 && which != 2) return fail(GSLAB_ERR_INVALID_ARGUMENT, "equation index must be 1 or 2");
  return guarded([&] { return new_expr(which == 1 ? sys->spec.system.F1() : sys->spec.system.F2(), out); });
}

gslab_status gslab_system_reduce(const gslab_system* sys, const gslab_expr* e, gslab_expr** out) {
  if (missing(sys) || missing(e) || missing(out)) return null_argument();
  return guarded([&] { return new_expr(gslab::reduce_mod_system(e->value, sys->spec.system).residual, out); });
}

gslab_status gslab_classify_symmetries(const gslab_system* sys, unsigned degree, int expect_table,
                                       char** report_json, int* passed) {
  if (missing(sys) || missing(report_json) || missing(passed)) return null_argument();
  if (degree < 1) return fail(GSLAB_ERR_INVALID_ARGUMENT, "degree must be at least 1");
  return guarded([&] {
    return emit(gslab::report_classify_symmetries(sys->spec, degree, expect_table != 0), report_json, passed);
  });
}

gslab_status gslab_classify_substitutions(const gslab_system* sys, unsigned degree, int expect_table,
                                          char** report_json, int* passed) {
  if (missing(sys) || missing(report_json) || missing(passed)) return null_argument();
  if (degree < 2) return fail(GSLAB_ERR_INVALID_ARGUMENT, "degree must be at least 2");
  return guarded([&] {
    return emit(gslab::report_classify_substitutions(sys->spec, degree, expect_table != 0), report_json, passed);
  });
}

gslab_status gslab_verify_symmetry(const gslab_system* sys, const char* generator, char** report_json,
                                   int* passed) {
  if (missing(sys) || missing(generator) || missing(report_json) || missing(passed)) return null_argument();
  return guarded([&] { return emit(gslab::report_verify_symmetry(sys->spec, generator), report_json, passed); });
}

gslab_status gslab_adjoint(const gslab_system* sys, const char* substitution, char** report_json, int* passed) {
  if (missing(sys) || missing(report_json) || missing(passed)) return null_argument();
  return guarded([&] {
    return emit(gslab::report_adjoint(sys->spec, substitution ? substitution : ""), report_json, passed);
  });
}

gslab_status gslab_conserved(const gslab_system* sys, const char* generator, const char* substitution,
                             char** report_json, int* passed) {
  if (missing(sys) || missing(generator) || missing(substitution) || missing(report_json) || missing(passed))
    return null_argument();
  return guarded(
      [&] { return emit(gslab::report_conserved(sys->spec, generator, substitution), report_json, passed); });
}

gslab_status gslab_check_divergence(const gslab_system* sys, const char* ct, const char* cx, char** report_json,
                                    int* passed) {
  if (missing(sys) || missing(ct) || missing(cx) || missing(report_json) || missing(passed)) return null_argument();
  return guarded([&] { return emit(gslab::report_check_divergence(sys->spec, ct, cx), report_json, passed); });
}

gslab_status gslab_simulate(const char* config_text, const char* csv_path, char** report_json, int* passed) {
  if (missing(config_text) || missing(report_json) || missing(passed)) return null_argument();
  return guarded([&] {
    std::unique_ptr<std::ofstream> csv;
    if (csv_path) {
      csv = std::make_unique<std::ofstream>(csv_path);
      if (!*csv) return fail(GSLAB_ERR_IO, std::string("cannot open '") + csv_path + "' for writing");
    }
    const auto report = gslab::report_simulate(config_text, csv.get());
    if (csv) {
      csv->flush();
      if (!*csv) return fail(GSLAB_ERR_IO, std::string("failed writing '") + csv_path + "'");
    }
    return emit(report, report_json, passed);
  });
}

uint64_t gslab_seed_from_env(void) { return gslab::seed_from_env(); }

gslab_status gslab_reproduce(unsigned jobs, uint64_t seed, char** report_json, int* passed) {
  if (missing(report_json) || missing(passed)) return null_argument();
  return guarded([&] { return emit(gslab::report_reproduce(jobs, seed), report_json, passed); });
}

}  // extern "C"
