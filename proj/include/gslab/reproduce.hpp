#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gslab {

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct ReproduceOptions {
  unsigned jobs = 1;
  std::uint64_t seed = 20241015;
  std::size_t property_cases = 100;
};

/// Runs fn(0..count-1) on up to `jobs` threads. The first exception thrown
/// by any call is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

CriterionResult criterion_symmetry_table(const ReproduceOptions& options);
CriterionResult criterion_invariance(const ReproduceOptions& options);
CriterionResult criterion_self_adjointness(const ReproduceOptions& options);
CriterionResult criterion_conserved_vectors(const ReproduceOptions& options);
CriterionResult criterion_properties(const ReproduceOptions& options);
CriterionResult criterion_numerical_conservation(const ReproduceOptions& options);
CriterionResult criterion_linear_mode(const ReproduceOptions& options);

/// All criteria in a fixed order.
std::vector<CriterionResult> reproduce_all(const ReproduceOptions& options);

/// Equivalence factors of the constructed vectors against the reference
/// vectors, keyed "<case>:p=<p>". Pinned in the regression tests.
struct ReferenceFactor {
  std::string key;
  std::string generator;
  std::string lambda;  // empty when the constructed density is trivial
};
std::vector<ReferenceFactor> reference_factors();

}  // namespace gslab
