#pragma once

#include "entkit/types.hpp"

namespace entkit {

/// Pure state on the ancilla-extended system. Each party r of the output is
/// the original factor H_r combined with its ancilla A_r (local index
/// h_r * dim(A_r) + a_r). All ancillas are qubits except the last, whose
/// dimension is the numerical rank of the source (floored at 2).
struct Purification {
  PureState state;
  std::vector<Index> ancilla_dims;  // one per party
  Index source_rank;
};

Purification purify(const DensityMatrix& rho);

/// Partial trace of |psi><psi| over every ancilla factor; recovers the
/// source density matrix of a Purification.
DensityMatrix trace_back(const Purification& p, const PartySystem& source_sys);

}  // namespace entkit
