#include <doctest.h>

#include <numeric>
#include <set>

#include "entkit/classify.hpp"
#include "entkit/measures.hpp"
#include "entkit/states.hpp"
#include "entkit/suites.hpp"
#include "entkit/tensor_ops.hpp"

using namespace entkit;

namespace {

PureState permute_parties(const PureState& psi, const std::vector<Index>& perm) {
  const Index n = psi.system.party_count();
  std::vector<Index> new_dims(n);
  for (Index r = 0; r < n; ++r) new_dims[perm[r]] = psi.system.dims[r];
  PartySystem out_sys(new_dims);
  auto in_strides = psi.system.strides();
  auto out_strides = out_sys.strides();
  Vec out = Vec::Zero(psi.amplitudes.size());
  for (Index i = 0; i < psi.amplitudes.size(); ++i) {
    Index rem = i, j = 0;
    for (Index r = 0; r < n; ++r) {
      j += (rem / in_strides[r]) * out_strides[perm[r]];
      rem %= in_strides[r];
    }
    out(j) = psi.amplitudes(i);
  }
  return {out_sys, out};
}

}  // namespace

TEST_CASE("enumeration counts for small party numbers") {
  auto e2 = enumerate_structures(2);
  CHECK(e2.structure_count == 2);
  CHECK(e2.class_count == 2);
  CHECK(e2.structures[0].loops.empty());
  CHECK(e2.structures[1].loops == std::vector<std::vector<Index>>{{0, 1}});

  auto e3 = enumerate_structures(3);
  CHECK(e3.structure_count == 16);
  CHECK(e3.class_count == 8);
  REQUIRE(e3.classes.size() == 8);
  CHECK(e3.classes[0] == std::vector<int>{1});
  CHECK(e3.classes[1] == std::vector<int>{2, 3, 4});
  CHECK(e3.classes[2] == std::vector<int>{5, 6, 7});
  CHECK(e3.classes[3] == std::vector<int>{8});
  CHECK(e3.classes[4] == std::vector<int>{9});
  CHECK(e3.classes[5] == std::vector<int>{10, 11, 12});
  CHECK(e3.classes[6] == std::vector<int>{13, 14, 15});
  CHECK(e3.classes[7] == std::vector<int>{16});

  // the text-pinned ids
  CHECK(e3.structures[0].loops.empty());  // system 1
  CHECK(e3.structures[7].loops ==
        std::vector<std::vector<Index>>{{0, 1}, {0, 2}, {1, 2}});  // system 8
  CHECK(e3.structures[8].loops ==
        std::vector<std::vector<Index>>{{0, 1, 2}});  // system 9
  CHECK(e3.structures[15].loops.size() == 4);  // system 16: everything

  auto e4 = enumerate_structures(4);
  CHECK(e4.structure_count == 2048);
  std::size_t total = 0;
  for (const auto& c : e4.classes) total += c.size();
  CHECK(total == 2048);
  CHECK(e4.class_count == e4.classes.size());

  CHECK_THROWS_AS(enumerate_structures(1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_structures(6), std::invalid_argument);
}

TEST_CASE("five parties: counts only, via Burnside") {
  auto e5 = enumerate_structures(5);
  CHECK(e5.structure_count == (std::uint64_t{1} << 26));
  CHECK_FALSE(e5.materialized);
  CHECK(e5.class_count > 0);
  CHECK(e5.class_count < e5.structure_count);
}

TEST_CASE("classify3q on the canonical fixtures") {
  StructureReport ghz = classify3q(make_ghz());
  CHECK(ghz.system_id == 9);
  CHECK(ghz.exact);
  CHECK(ghz.structure.loops == std::vector<std::vector<Index>>{{0, 1, 2}});

  StructureReport w = classify3q(make_w());
  CHECK(w.system_id == 8);
  CHECK(w.structure.loops.size() == 3);

  Vec v = Vec::Zero(8);  // (|000> + |011>)/sqrt(2): pair loop on {1,2}
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  StructureReport pair = classify3q(PureState{PartySystem({2, 2, 2}), v});
  CHECK(pair.structure.loops == std::vector<std::vector<Index>>{{1, 2}});
  CHECK(pair.system_id == 4);
  CHECK(pair.class_id == 2);  // class {2,3,4}

  StructureReport prod = classify3q(make_basis_state(PartySystem({2, 2, 2}), 0));
  CHECK(prod.system_id == 1);

  CHECK_THROWS_AS(classify3q(make_bell()), std::invalid_argument);
}

TEST_CASE("classify3q is permutation covariant") {
  Vec v = Vec::Zero(8);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  PureState base{PartySystem({2, 2, 2}), v};
  auto e3 = enumerate_structures(3);
  std::vector<Index> perm{0, 1, 2};
  std::set<int> seen_ids;
  do {
    StructureReport rep = classify3q(permute_parties(base, perm));
    CHECK(rep.class_id == 2);
    seen_ids.insert(rep.system_id);
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(seen_ids == std::set<int>{2, 3, 4});
}

TEST_CASE("random 3-qubit states never land in the product class") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    PureState psi = random_pure(PartySystem({2, 2, 2}), 7000 + seed);
    StructureReport rep = classify3q(psi);
    CHECK(rep.system_id != 1);
    // independent route: CKW equality fixes the tangle from concurrences
    DensityMatrix rho = to_density(psi);
    double cab = concurrence2q(partial_trace(rho, {0, 1}));
    double cac = concurrence2q(partial_trace(rho, {0, 2}));
    double det_a = partial_trace(rho, {0}).matrix.determinant().real();
    double tangle_oracle = 4.0 * det_a - cab * cab - cac * cac;
    CHECK(rep.detectors.at("tangle_0_1_2") ==
          doctest::Approx(tangle_oracle).epsilon(1e-7));
  }
}

TEST_CASE("is_fully_entangled on the canonical examples") {
  CHECK_FALSE(
      is_fully_entangled(make_basis_state(PartySystem({2, 2, 2}), 0)).fully_entangled);

  FullEntanglementReport ghz = is_fully_entangled(make_ghz());
  CHECK_FALSE(ghz.fully_entangled);
  // the full tripartition is entangled, the two-party reductions are not
  for (const auto& ev : ghz.evidence) {
    if (ev.subset.size() == 3)
      CHECK(ev.entangled);
    else
      CHECK_FALSE(ev.entangled);
  }

  CHECK(is_fully_entangled(make_w()).fully_entangled);
  CHECK_THROWS_AS(is_fully_entangled(PureState{PartySystem({3, 3}),
                                               random_pure(PartySystem({3, 3}), 1)
                                                   .amplitudes}),
                  std::invalid_argument);
}

TEST_CASE("structure_report heuristics") {
  StructureReport sep = structure_report(make_separable_mixed());
  CHECK(sep.structure.loops.empty());
  CHECK_FALSE(sep.exact);

  PureState bell0 = kron(make_bell(), make_basis_state(PartySystem({2}), 0));
  StructureReport pair = structure_report(to_density(bell0));
  CHECK(pair.structure.loops == std::vector<std::vector<Index>>{{0, 1}});

  StructureReport ghz = structure_report(to_density(make_ghz()));
  CHECK(ghz.structure.loops == std::vector<std::vector<Index>>{{0, 1, 2}});
  CHECK_FALSE(ghz.exact);

  // pure 3-qubit inputs route through the exact classifier
  StructureReport exact = structure_report(make_ghz());
  CHECK(exact.exact);
  CHECK(exact.system_id == 9);

  CHECK_THROWS_AS(structure_report(random_density(PartySystem({4, 2}), 2, 1)),
                  std::invalid_argument);
}

TEST_CASE("report json carries the schema fields") {
  std::string j = report_to_json(classify3q(make_ghz()));
  for (const char* key :
       {"\"systemId\"", "\"classId\"", "\"loops\"", "\"detectors\"", "\"exact\""})
    CHECK(j.find(key) != std::string::npos);
}
