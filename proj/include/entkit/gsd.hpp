#pragma once

#include <cstdint>
#include <vector>

#include "entkit/types.hpp"

namespace entkit {

struct GsdConfig {
  int restarts = 16;
  int max_iterations = 2000;  // sweeps per restart
  double tolerance = 1e-10;   // objective-improvement stop threshold
  std::uint64_t seed = 0;
};

struct GsdDiagnostics {
  int restarts = 0;
  int iterations = 0;  // sweeps used by the winning restart
  bool converged = false;
  std::vector<double> objective_history;  // per-sweep, winning restart
};

/// Canonical-form result: coefficient tensor C over the party dims, the
/// local unitaries that produce it, and the IU entropy of |C|^2 in bits.
struct SchmidtForm {
  PartySystem system;
  Vec coefficients;
  std::vector<Mat> local_unitaries;
  double objective = 0.0;
  Index schmidt_terms = 0;
  GsdDiagnostics diagnostics;
};

/// Shannon entropy of the squared moduli of a coefficient vector, in bits.
/// No normalization check; callers wanting validation use measures::iu_entropy.
double iu_entropy_unchecked(const Vec& coeffs);

/// Minimize the IU entropy of (U_1 x ... x U_n) psi over local unitaries by
/// alternating per-party geodesic descent with random restarts. Deterministic
/// for a fixed config.
SchmidtForm gsd(const PureState& psi, const GsdConfig& config = {});

PureState apply_local_unitaries(const PureState& psi,
                                const std::vector<Mat>& us);

}  // namespace entkit
