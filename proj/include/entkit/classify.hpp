#pragma once

#include <map>
#include <string>
#include <vector>

#include "entkit/types.hpp"

namespace entkit {

/// A set of "entanglement loops": party subsets of size >= 2. Loops are
/// kept sorted (ascending members; loops ordered by size, then
/// lexicographically).
struct EntanglementStructure {
  Index n = 0;
  std::vector<std::vector<Index>> loops;
};

struct StructureEnumeration {
  Index n = 0;
  std::uint64_t structure_count = 0;
  std::uint64_t class_count = 0;
  bool materialized = false;  // lists below populated (n <= 4)
  std::vector<EntanglementStructure> structures;  // systemId = index + 1
  std::vector<std::vector<int>> classes;  // orbit members (1-based ids)
  std::vector<int> class_of;              // 1-based class id per structure
};

/// All loop sets for an n-party system with the orbit partition under
/// party permutations. Structures are ordered with larger loops most
/// significant: structures without any size-n loop come first, and within
/// a block ordering is by loop count then lexicographic. For n = 5 only
/// the counts are computed (Burnside), not the lists.
StructureEnumeration enumerate_structures(Index n);

struct StructureReport {
  EntanglementStructure structure;
  int system_id = 0;  // 0 when no enumeration ids exist for this n
  int class_id = 0;
  std::map<std::string, double> detectors;
  std::vector<std::string> warnings;  // borderline detector scores
  bool exact = false;
};

/// Exact classifier for 3-qubit pure states (concurrence + 3-tangle rules).
StructureReport classify3q(const PureState& psi);

struct SubsetEvidence {
  std::vector<Index> subset;
  double min_score = 0.0;  // smallest negativity over internal bipartitions
  bool entangled = false;
};

struct FullEntanglementReport {
  bool fully_entangled = false;
  std::vector<SubsetEvidence> evidence;
};

/// True iff every party subset of size >= 2 is entangled across every
/// internal bipartition (negativity detector). Qubit parties, n <= 4.
FullEntanglementReport is_fully_entangled(const PureState& psi);

/// Heuristic loop detection for general small states (PPT-based, flagged
/// non-exact except for 3-qubit pure inputs).
StructureReport structure_report(const DensityMatrix& rho);
StructureReport structure_report(const PureState& psi);

std::string report_to_json(const StructureReport& report);

}  // namespace entkit
