#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "entkit/types.hpp"

namespace entkit {

struct Violation {
  std::string invariant;
  double residual;
};

/// Outcome of validate(): lists every violated invariant with its residual.
struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const PureState& psi);
ValidationReport validate(const DensityMatrix& rho);

/// Haar-distributed pure state, deterministic for a given seed.
PureState random_pure(const PartySystem& sys, std::uint64_t seed);

/// Unit-trace PSD matrix of the requested numerical rank (Ginibre ensemble),
/// deterministic for a given seed.
DensityMatrix random_density(const PartySystem& sys, Index rank,
                             std::uint64_t seed);

using State = std::variant<PureState, DensityMatrix>;

/// JSON state file: { "kind": "pure"|"density", "dims": [...], "data": [[re,im],...] }.
State read_state(const std::string& path);
State parse_state(const std::string& text);
void write_state(const State& state, const std::string& path);
std::string state_to_json(const State& state);

}  // namespace entkit
