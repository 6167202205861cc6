#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gslab/gslab.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_failed = 2;

struct Options {
  std::vector<std::string> assignments;
  unsigned degree = 2;
  bool expect_table = false;
  unsigned jobs = 1;
  std::string out;
  std::string generator;
  std::string substitution;
  std::string ct;
  std::string cx;
  std::string config;
  std::string csv;
  std::string invocation;
};

class SystemHandle {
 public:
  ~SystemHandle() { gslab_system_free(sys_); }
  gslab_system** out() { return &sys_; }
  const gslab_system* get() const { return sys_; }

 private:
  gslab_system* sys_ = nullptr;
};

int error(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return exit_error;
}

int status_exit(gslab_status status) {
  std::cerr << "error: " << gslab_last_error() << '\n';
  return status == GSLAB_ERR_PRECONDITION ? exit_failed : exit_error;
}

// a= b= c= p= select the Gardner system; r= s= (with c=) a general one.
gslab_status make_system(const Options& o, SystemHandle& sys, std::string& problem) {
  std::map<std::string, std::string> values;
  for (const auto& item : o.assignments) {
    const auto eq = item.find('=');
    const std::string key = eq == std::string::npos ? item : item.substr(0, eq);
    if (eq == std::string::npos || (key != "a" && key != "b" && key != "c" && key != "p" && key != "r" && key != "s")) {
      problem = "expected a=, b=, c=, p=, r= or s=, got '" + item + "'";
      return GSLAB_ERR_INVALID_ARGUMENT;
    }
    values[key] = item.substr(eq + 1);
  }
  auto value = [&](const char* key, const char* fallback) {
    const auto it = values.find(key);
    return it == values.end() ? std::string(fallback) : it->second;
  };
  if (values.count("r") || values.count("s")) {
    if (!values.count("r") || !values.count("s")) {
      problem = "a general system needs both r= and s=";
      return GSLAB_ERR_INVALID_ARGUMENT;
    }
    return gslab_system_general(values["r"].c_str(), values["s"].c_str(), value("c", "1").c_str(), sys.out());
  }
  return gslab_system_gardner(value("a", "1").c_str(), value("b", "0").c_str(), value("c", "1").c_str(),
                              value("p", "1").c_str(), sys.out());
}

int finish(const Options& o, gslab_status status, char* report, int passed) {
  if (status != GSLAB_OK) return status_exit(status);
  auto doc = nlohmann::ordered_json::parse(report);
  gslab_string_free(report);
  doc["invocation"] = o.invocation;
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(o.out);
    if (!(file << text)) return error("cannot write '" + o.out + "'");
  }
  return passed ? exit_ok : exit_failed;
}

template <typename F>
int with_system(const Options& o, F&& command) {
  SystemHandle sys;
  std::string problem;
  const gslab_status s = make_system(o, sys, problem);
  if (!problem.empty()) return error(problem);
  if (s != GSLAB_OK) return status_exit(s);
  char* report = nullptr;
  int passed = 0;
  const gslab_status status = command(sys.get(), &report, &passed);
  return finish(o, status, report, passed);
}

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path);
  ok = static_cast<bool>(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string default_csv_path(const std::string& config) {
  const auto slash = config.find_last_of('/');
  const auto dot = config.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return config.substr(0, dot) + ".csv";
  return config + ".csv";
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  for (int i = 0; i < argc; ++i) o.invocation += (i ? " " : "") + std::string(i ? argv[i] : "gslab");

  CLI::App app{"Symmetries, self-adjointness and conservation laws of a coupled Gardner-type system"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gslab_version()));

  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("params", o.assignments, "a=, b=, c= rationals and p= positive integer (or r=, s= fluxes)");
    cmd->add_option("--out", o.out, "Write the JSON report to this path");
  };

  auto* sym = app.add_subcommand("classify-symmetries", "Point symmetries from a polynomial ansatz");
  add_params(sym);
  sym->add_option("--degree", o.degree, "Ansatz degree")->check(CLI::Range(1u, 6u));
  sym->add_flag("--expect-table", o.expect_table, "Fail unless the classification table is reproduced");

  auto* subs = app.add_subcommand("classify-substitutions", "Substitutions certifying nonlinear self-adjointness");
  add_params(subs);
  subs->add_option("--degree", o.degree, "Ansatz degree")->check(CLI::Range(2u, 6u));
  subs->add_flag("--expect-table", o.expect_table, "Fail unless the case dimension is reproduced");

  auto* verify = app.add_subcommand("verify-symmetry", "Invariance residuals of one generator");
  add_params(verify);
  verify->add_option("--gen", o.generator, "Generator name or T=..,X=..,U=..,V=..")->required();

  auto* adj = app.add_subcommand("adjoint", "Adjoint system and optional substitution check");
  add_params(adj);
  adj->add_option("--sub", o.substitution, "Substitution name or phi=..,psi=..");

  auto* cons = app.add_subcommand("conserved", "Conserved vector of a generator and a substitution");
  add_params(cons);
  cons->add_option("--gen", o.generator, "Generator name or T=..,X=..,U=..,V=..")->required();
  cons->add_option("--sub", o.substitution, "Substitution name or phi=..,psi=..")->required();

  auto* div = app.add_subcommand("check-divergence", "Divergence of (Ct, Cx) modulo the system");
  add_params(div);
  div->add_option("--ct", o.ct, "Density")->required();
  div->add_option("--cx", o.cx, "Flux")->required();

  auto* sim = app.add_subcommand("simulate", "Spectral run with functional monitors");
  sim->add_option("config", o.config, "Run configuration file")->required();
  sim->add_option("--csv", o.csv, "Time-series output (default: config path with .csv)");
  sim->add_option("--out", o.out, "Write the JSON report to this path");

  auto* repro = app.add_subcommand("reproduce-paper", "Run every acceptance check");
  repro->add_option("--jobs", o.jobs, "Worker threads (0: all cores)");
  repro->add_option("--out", o.out, "Write the JSON report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_error;
  }

  if (sym->parsed())
    return with_system(o, [&](const gslab_system* s, char** r, int* p) {
      return gslab_classify_symmetries(s, o.degree, o.expect_table, r, p);
    });
  if (subs->parsed())
    return with_system(o, [&](const gslab_system* s, char** r, int* p) {
      return gslab_classify_substitutions(s, o.degree, o.expect_table, r, p);
    });
  if (verify->parsed())
    return with_system(o, [&](const gslab_system* s, char** r, int* p) {
      return gslab_verify_symmetry(s, o.generator.c_str(), r, p);
    });
  if (adj->parsed())
    return with_system(o, [&](const gslab_system* s, char** r, int* p) {
      return gslab_adjoint(s, o.substitution.empty() ? nullptr : o.substitution.c_str(), r, p);
    });
  if (cons->parsed())
    return with_system(o, [&](const gslab_system* s, char** r, int* p) {
      return gslab_conserved(s, o.generator.c_str(), o.substitution.c_str(), r, p);
    });
  if (div->parsed())
    return with_system(o, [&](const gslab_system* s, char** r, int* p) {
      return gslab_check_divergence(s, o.ct.c_str(), o.cx.c_str(), r, p);
    });
  if (sim->parsed()) {
    bool ok = false;
    const std::string text = read_file(o.config, ok);
    if (!ok) return error("cannot read '" + o.config + "'");
    const std::string csv = o.csv.empty() ? default_csv_path(o.config) : o.csv;
    char* report = nullptr;
    int passed = 0;
    const gslab_status status = gslab_simulate(text.c_str(), csv.c_str(), &report, &passed);
    return finish(o, status, report, passed);
  }
  char* report = nullptr;
  int passed = 0;
  const gslab_status status = gslab_reproduce(o.jobs, gslab_seed_from_env(), &report, &passed);
  return finish(o, status, report, passed);
}
