#include "entkit/classify.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "entkit/measures.hpp"
#include "entkit/states.hpp"
#include "entkit/tensor_ops.hpp"

namespace entkit {

namespace {

constexpr double kDetectTol = 1e-6;
constexpr double kNoiseFloor = 1e-9;

std::vector<Index> mask_members(unsigned mask) {
  std::vector<Index> out;
  for (Index p = 0; mask; ++p, mask >>= 1)
    if (mask & 1u) out.push_back(p);
  return out;
}

/// Eligible loops (subsets of size >= 2) ordered by (size, member lex).
std::vector<unsigned> eligible_loops(Index n) {
  std::vector<unsigned> loops;
  for (unsigned m = 0; m < (1u << n); ++m)
    if (std::popcount(m) >= 2) loops.push_back(m);
  std::sort(loops.begin(), loops.end(), [](unsigned a, unsigned b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return mask_members(a) < mask_members(b);
  });
  return loops;
}

/// Structure ordering key: larger loops are most significant. For each loop
/// size from n down to 2, compare (count, lex list of loops of that size).
struct StructureKey {
  // flattened per-size blocks, big sizes first
  std::vector<std::vector<Index>> key;

  static StructureKey make(Index n, const std::vector<unsigned>& loop_masks) {
    StructureKey k;
    for (Index s = n; s >= 2; --s) {
      std::vector<std::vector<Index>> of_size;
      for (unsigned m : loop_masks)
        if (std::popcount(m) == s) of_size.push_back(mask_members(m));
      std::sort(of_size.begin(), of_size.end());
      k.key.push_back({static_cast<Index>(of_size.size())});
      for (auto& l : of_size) k.key.push_back(std::move(l));
    }
    return k;
  }

  bool operator<(const StructureKey& o) const { return key < o.key; }
};

std::vector<std::vector<Index>> all_permutations(Index n) {
  std::vector<Index> p(n);
  std::iota(p.begin(), p.end(), Index{0});
  std::vector<std::vector<Index>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

unsigned permute_mask(unsigned mask, const std::vector<Index>& perm) {
  unsigned out = 0;
  for (Index p = 0; mask; ++p, mask >>= 1)
    if (mask & 1u) out |= 1u << perm[p];
  return out;
}

std::uint64_t burnside_class_count(Index n) {
  auto loops = eligible_loops(n);
  auto perms = all_permutations(n);
  std::uint64_t total = 0;
  for (const auto& perm : perms) {
    // cycle count of the induced permutation on loops
    std::map<unsigned, std::size_t> pos;
    for (std::size_t i = 0; i < loops.size(); ++i) pos[loops[i]] = i;
    std::vector<bool> seen(loops.size(), false);
    std::uint64_t cycles = 0;
    for (std::size_t i = 0; i < loops.size(); ++i) {
      if (seen[i]) continue;
      ++cycles;
      std::size_t j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = pos[permute_mask(loops[j], perm)];
      }
    }
    total += std::uint64_t{1} << cycles;
  }
  return total / perms.size();
}

EntanglementStructure structure_from_masks(Index n,
                                           std::vector<unsigned> masks) {
  EntanglementStructure s;
  s.n = n;
  for (unsigned m : masks) s.loops.push_back(mask_members(m));
  std::sort(s.loops.begin(), s.loops.end(),
            [](const std::vector<Index>& a, const std::vector<Index>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return s;
}

const StructureEnumeration& cached_enumeration(Index n);

/// systemId (1-based) of a loop set, or 0 if n has no materialized ids.
int lookup_system_id(Index n, const std::vector<std::vector<Index>>& loops) {
  if (n < 2 || n > 4) return 0;
  const auto& e = cached_enumeration(n);
  for (std::size_t i = 0; i < e.structures.size(); ++i)
    if (e.structures[i].loops == loops) return static_cast<int>(i) + 1;
  return 0;
}

StructureEnumeration build_enumeration(Index n) {
  if (n < 2 || n > 5)
    throw std::invalid_argument("enumerate_structures: n must be in [2,5]");
  StructureEnumeration e;
  e.n = n;
  const auto loops = eligible_loops(n);
  e.structure_count = std::uint64_t{1} << loops.size();
  e.class_count = burnside_class_count(n);
  if (n == 5) return e;  // 2^26 structures: counts only
  e.materialized = true;

  const std::size_t m = loops.size();
  std::vector<std::uint64_t> order(e.structure_count);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  std::vector<StructureKey> keys(e.structure_count);
  for (std::uint64_t s = 0; s < e.structure_count; ++s) {
    std::vector<unsigned> masks;
    for (std::size_t i = 0; i < m; ++i)
      if (s & (std::uint64_t{1} << i)) masks.push_back(loops[i]);
    keys[s] = StructureKey::make(n, masks);
  }
  std::sort(order.begin(), order.end(),
            [&](std::uint64_t a, std::uint64_t b) { return keys[a] < keys[b]; });

  std::vector<std::uint64_t> id_of_bits(e.structure_count);
  for (std::uint64_t rank = 0; rank < e.structure_count; ++rank) {
    std::uint64_t bits = order[rank];
    id_of_bits[bits] = rank;
    std::vector<unsigned> masks;
    for (std::size_t i = 0; i < m; ++i)
      if (bits & (std::uint64_t{1} << i)) masks.push_back(loops[i]);
    e.structures.push_back(structure_from_masks(n, masks));
  }

  // Orbit partition under party permutations.
  std::map<unsigned, std::size_t> loop_pos;
  for (std::size_t i = 0; i < m; ++i) loop_pos[loops[i]] = i;
  auto perms = all_permutations(n);
  e.class_of.assign(e.structure_count, 0);
  for (std::uint64_t rank = 0; rank < e.structure_count; ++rank) {
    if (e.class_of[rank] != 0) continue;
    std::uint64_t bits = order[rank];
    std::vector<int> members;
    for (const auto& perm : perms) {
      std::uint64_t image = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (bits & (std::uint64_t{1} << i))
          image |= std::uint64_t{1} << loop_pos[permute_mask(loops[i], perm)];
      members.push_back(static_cast<int>(id_of_bits[image]) + 1);
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    e.classes.push_back(members);
    int cid = static_cast<int>(e.classes.size());
    for (int id : members) e.class_of[id - 1] = cid;
  }
  return e;
}

const StructureEnumeration& cached_enumeration(Index n) {
  static const StructureEnumeration e2 = build_enumeration(2);
  static const StructureEnumeration e3 = build_enumeration(3);
  static const StructureEnumeration e4 = build_enumeration(4);
  switch (n) {
    case 2: return e2;
    case 3: return e3;
    default: return e4;
  }
}

void note_borderline(StructureReport& rep, const std::string& name,
                     double score) {
  if (score > kNoiseFloor && score <= kDetectTol)
    rep.warnings.push_back("borderline detector score: " + name);
}

std::string subset_name(const char* prefix, const std::vector<Index>& s) {
  std::ostringstream os;
  os << prefix;
  for (Index p : s) os << "_" << p;
  return os.str();
}

/// All non-empty proper sub-bipartitions (A, S\A) of a subset, as lists of
/// positions inside the reduced state.
std::vector<std::vector<Index>> internal_cuts(std::size_t k) {
  std::vector<std::vector<Index>> cuts;
  for (unsigned a = 1; a < (1u << k) - 1; ++a) {
    if (a & (1u << (k - 1))) continue;  // fix last member on the B side
    cuts.push_back(mask_members(a));
  }
  return cuts;
}

}  // namespace

StructureEnumeration enumerate_structures(Index n) {
  if (n >= 2 && n <= 4) return cached_enumeration(n);
  return build_enumeration(n);
}

StructureReport classify3q(const PureState& psi) {
  if (psi.system.dims != std::vector<Index>{2, 2, 2})
    throw std::invalid_argument("classify3q: requires a 3-qubit pure state");
  auto vr = validate(psi);
  if (!vr.ok()) throw ValidationError("classify3q: invalid pure state");

  DensityMatrix rho = to_density(psi);
  StructureReport rep;
  rep.exact = true;

  std::vector<unsigned> loop_masks;
  bool all_rank2 = true;
  for (Index r = 0; r < 3; ++r) {
    auto marg = partial_trace(rho, {r});
    auto spec = eigh(marg.matrix);
    double second = spec.eigenvalues(1);
    rep.detectors["marginal_rank2_" + std::to_string(r)] = second;
    note_borderline(rep, "marginal_" + std::to_string(r), second);
    if (second <= kDetectTol) all_rank2 = false;
  }

  for (Index x = 0; x < 3; ++x)
    for (Index y = x + 1; y < 3; ++y) {
      auto pair_rho = partial_trace(rho, {x, y});
      double c = concurrence2q(pair_rho);
      std::string name = subset_name("pair", {x, y});
      rep.detectors[name] = c;
      note_borderline(rep, name, c);
      if (c > kDetectTol) loop_masks.push_back((1u << x) | (1u << y));
    }

  double tangle = three_tangle(psi);
  rep.detectors["tangle_0_1_2"] = tangle;
  note_borderline(rep, "tangle", tangle);
  if (all_rank2 && tangle > kDetectTol) loop_masks.push_back(0b111);

  rep.structure = structure_from_masks(3, loop_masks);
  rep.system_id = lookup_system_id(3, rep.structure.loops);
  rep.class_id = cached_enumeration(3).class_of[rep.system_id - 1];
  return rep;
}

FullEntanglementReport is_fully_entangled(const PureState& psi) {
  const Index n = psi.system.party_count();
  if (n > 4) throw std::invalid_argument("is_fully_entangled: n must be <= 4");
  for (Index d : psi.system.dims)
    if (d != 2)
      throw std::invalid_argument("is_fully_entangled: qubit parties only");
  auto vr = validate(psi);
  if (!vr.ok()) throw ValidationError("is_fully_entangled: invalid pure state");

  DensityMatrix rho = to_density(psi);
  FullEntanglementReport out;
  out.fully_entangled = true;
  for (unsigned s = 0; s < (1u << n); ++s) {
    auto subset = mask_members(s);
    if (subset.size() < 2) continue;
    DensityMatrix red = subset.size() == static_cast<std::size_t>(n)
                            ? rho
                            : partial_trace(rho, subset);
    double min_neg = std::numeric_limits<double>::infinity();
    for (const auto& cut : internal_cuts(subset.size()))
      min_neg = std::min(min_neg, negativity(red, cut));
    SubsetEvidence ev;
    ev.subset = subset;
    ev.min_score = min_neg;
    ev.entangled = min_neg > kDetectTol;
    out.fully_entangled = out.fully_entangled && ev.entangled;
    out.evidence.push_back(std::move(ev));
  }
  return out;
}

StructureReport structure_report(const DensityMatrix& rho) {
  const Index n = rho.system.party_count();
  if (n > 4)
    throw std::invalid_argument("structure_report: at most 4 parties");
  for (Index d : rho.system.dims)
    if (d > 3)
      throw std::invalid_argument("structure_report: party dims must be <= 3");
  auto vr = validate(rho);
  if (!vr.ok()) throw ValidationError("structure_report: invalid density matrix");

  StructureReport rep;
  rep.exact = false;
  std::vector<unsigned> loop_masks;
  for (unsigned s = 0; s < (1u << n); ++s) {
    auto subset = mask_members(s);
    if (subset.size() < 2) continue;
    DensityMatrix red = subset.size() == static_cast<std::size_t>(n)
                            ? rho
                            : partial_trace(rho, subset);
    double min_neg = std::numeric_limits<double>::infinity();
    for (const auto& cut : internal_cuts(subset.size()))
      min_neg = std::min(min_neg, negativity(red, cut));
    std::string name = subset_name("loop", subset);
    rep.detectors[name] = min_neg;
    note_borderline(rep, name, min_neg);
    if (min_neg > kDetectTol) {
      unsigned mask = 0;
      for (Index p : subset) mask |= 1u << p;
      loop_masks.push_back(mask);
    }
  }
  rep.structure = structure_from_masks(n, loop_masks);
  rep.system_id = lookup_system_id(n, rep.structure.loops);
  if (rep.system_id > 0)
    rep.class_id = cached_enumeration(n).class_of[rep.system_id - 1];
  return rep;
}

StructureReport structure_report(const PureState& psi) {
  if (psi.system.dims == std::vector<Index>{2, 2, 2}) return classify3q(psi);
  return structure_report(to_density(psi));
}

std::string report_to_json(const StructureReport& report) {
  nlohmann::json j;
  j["systemId"] = report.system_id;
  j["classId"] = report.class_id;
  j["loops"] = report.structure.loops;
  j["detectors"] = report.detectors;
  j["warnings"] = report.warnings;
  j["exact"] = report.exact;
  return j.dump(2);
}

}  // namespace entkit
