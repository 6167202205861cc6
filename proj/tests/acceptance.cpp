// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any failure.
#include <cstdio>

#include "gslab/random_expr.hpp"
#include "gslab/reproduce.hpp"

int main() {
  gslab::ReproduceOptions options;
  options.jobs = 0;
  options.seed = gslab::seed_from_env();
  bool ok = true;
  for (const auto& c : gslab::reproduce_all(options)) {
    std::printf("%s %s: %s [%s] (%.2f s)\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                c.detail.c_str(), c.seconds);
    ok = ok && c.pass;
  }
  return ok ? 0 : 1;
}
