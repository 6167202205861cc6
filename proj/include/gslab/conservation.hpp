#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gslab/adjoint.hpp"
#include "gslab/symmetry.hpp"
#include "gslab/system.hpp"

namespace gslab {

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConservedVector {
  JetExpression Ct;
  JetExpression Cx;
  std::string provenance;
};

/// Conserved vector from a symmetry and a self-adjointness substitution:
///   Ct = phi W^u + psi W^v
///   Cx = phi (r_u W^u + r_v W^v) + c (phi D_x^2 - D_x phi D_x + D_x^2 phi) W^u
///      + psi (s_u W^u + s_v W^v) + c (psi D_x^2 - D_x psi D_x + D_x^2 psi) W^v
/// with both components reduced modulo the system. Throws PreconditionError
/// if g is not a symmetry or sub is not admissible.
ConservedVector ibragimov_vector(const SymmetryGenerator& g, const Substitution& sub,
                                 const DifferentialSystem& sys);

/// Same formula without precondition checks or reduction.
ConservedVector ibragimov_vector_unchecked(const SymmetryGenerator& g, const Substitution& sub,
                                           const DifferentialSystem& sys);

/// (u, r + c u_xx) and (v, s + c v_xx).
std::pair<ConservedVector, ConservedVector> direct_integration_vectors(const DifferentialSystem& sys);

/// reduce(D_t Ct + D_x Cx); zero certifies a conservation law.
ResidualReport divergence_residual(const ConservedVector& cv, const DifferentialSystem& sys);

struct DensitySignature {
  JetExpression sig_u;
  JetExpression sig_v;

  bool is_zero() const { return sig_u.is_zero() && sig_v.is_zero(); }
  friend bool operator==(const DensitySignature&, const DensitySignature&) = default;
};

/// x-variational derivatives of the reduced density; t is a parameter.
DensitySignature density_signature(const JetExpression& density, const DifferentialSystem& sys);
inline DensitySignature density_signature(const ConservedVector& cv, const DifferentialSystem& sys) {
  return density_signature(cv.Ct, sys);
}

/// lambda != 0 with signature(cv1) == lambda * signature(cv2). Two trivial
/// densities are equivalent with lambda = 1.
std::optional<Rational> equivalent_up_to_trivial(const ConservedVector& cv1, const ConservedVector& cv2,
                                                 const DifferentialSystem& sys);

/// Adds the trivial vector (D_x h, -D_t h) to cv, reduced modulo the system.
ConservedVector add_trivial(const ConservedVector& cv, const JetExpression& h, const DifferentialSystem& sys);

/// Published conserved vectors: "i" (a = 0), "ii.a" (b = 0, p = 1),
/// "ii.b" (b = 0, p = 2). Throws ParameterError when the case hypothesis fails.
ConservedVector reference_vector(const std::string& case_label, const SystemParameters& params);
std::vector<std::string> reference_vector_cases(const SystemParameters& params);

/// Generator/substitution pairs that the published vectors are attributed to.
struct ReferencePairing {
  std::string case_label;
  std::string generator;
  Substitution substitution;
};
std::vector<ReferencePairing> reference_pairings(const SystemParameters& params);

}  // namespace gslab
