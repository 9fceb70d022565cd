#include <doctest.h>

#include "entkit/purification.hpp"
#include "entkit/states.hpp"
#include "entkit/suites.hpp"
#include "entkit/tensor_ops.hpp"

using namespace entkit;

TEST_CASE("rank-1 input purifies to the state with ancillas in |0>") {
  DensityMatrix ghz = to_density(make_ghz());
  Purification p = purify(ghz);
  CHECK(p.source_rank == 1);
  CHECK(p.ancilla_dims == std::vector<Index>{2, 2, 2});
  CHECK(p.state.system.dims == std::vector<Index>{4, 4, 4});
  // support: |000>|000> and |111>|000> -> combined locals (0,0,0), (2,2,2)
  CHECK(std::abs(p.state.amplitudes(0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(p.state.amplitudes(2 * 16 + 2 * 4 + 2)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(trace_back(p, ghz.system).matrix.isApprox(ghz.matrix, 1e-9));
}

TEST_CASE("the separable mixed example purifies to a GHZ-like state") {
  DensityMatrix rho = make_separable_mixed();
  Purification p = purify(rho);
  CHECK(p.source_rank == 2);
  CHECK(p.state.system.dims == std::vector<Index>{4, 4});
  // two equal terms; locally equivalent to (|001> + |110>)/sqrt(2)
  int support = 0;
  for (Index i = 0; i < p.state.amplitudes.size(); ++i)
    if (std::abs(p.state.amplitudes(i)) > 1e-12) {
      ++support;
      CHECK(std::abs(p.state.amplitudes(i)) ==
            doctest::Approx(1.0 / std::sqrt(2.0)));
    }
  CHECK(support == 2);
  // bipartite Schmidt spectrum across the party cut is (1/2, 1/2)
  auto marg = eigh(
      partial_trace(to_density(p.state), {0}).matrix);
  CHECK(marg.eigenvalues(0) == doctest::Approx(0.5));
  CHECK(marg.eigenvalues(1) == doctest::Approx(0.5));
  CHECK(trace_distance(trace_back(p, rho.system), rho) < 1e-9);
}

TEST_CASE("maximally mixed qubit purifies to a Bell-like vector") {
  Mat half = Mat::Identity(2, 2) / 2.0;
  DensityMatrix rho{PartySystem({2}), half};
  Purification p = purify(rho);
  CHECK(p.state.system.dims == std::vector<Index>{4});
  CHECK(std::abs(p.state.amplitudes(0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(p.state.amplitudes(3)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(trace_distance(trace_back(p, rho.system), rho) < 1e-9);
}

TEST_CASE("trace-back recovers random densities") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PartySystem sys = seed % 2 ? PartySystem({2, 2, 2}) : PartySystem({2, 2});
    Index rank = 1 + seed % 4;
    DensityMatrix rho = random_density(sys, rank, seed);
    Purification p = purify(rho);
    CHECK(p.source_rank == rank);
    CHECK(p.state.system.party_count() == sys.party_count());
    CHECK(std::abs(p.state.amplitudes.norm() - 1.0) < 1e-10);
    for (Index r = 0; r + 1 < sys.party_count(); ++r)
      CHECK(p.ancilla_dims[r] == 2);
    CHECK(p.ancilla_dims.back() == std::max<Index>(rank, 2));
    CHECK(trace_distance(trace_back(p, sys), rho) < 1e-9);
  }
}
