#pragma once

#include <string>
#include <vector>

#include "entkit/gsd.hpp"
#include "entkit/types.hpp"

namespace entkit {

// Common fixture states.
PureState make_basis_state(const PartySystem& sys, Index idx);
PureState make_bell();                  // (|00> + |11>)/sqrt(2)
PureState make_ghz(Index parties = 3);  // (|0..0> + |1..1>)/sqrt(2)
PureState make_w();                     // (|001> + |010> + |100>)/sqrt(3)
DensityMatrix make_separable_mixed();   // (|01><01| + |10><10|)/2

struct AdditivityCase {
  std::string name;
  DensityMatrix rho;
  DensityMatrix sigma;
};

/// The fixed 10-pair additivity suite (products of Bell / GHZ / product /
/// random low-rank mixed states).
std::vector<AdditivityCase> additivity_suite();

struct ContinuityCase {
  DensityMatrix rho;
  DensityMatrix sigma;
  double mix = 0.0;  // perturbation weight actually used
};

/// Seeded rank-preserving perturbation pair: sigma = (1-t) rho + t tau with
/// tau supported on range(rho). The weight shrinks (up to `max_attempts`
/// halvings by the caller) so the decomposed states stay close.
ContinuityCase make_continuity_pair(std::uint64_t seed, double mix_scale = 1.0);

}  // namespace entkit
