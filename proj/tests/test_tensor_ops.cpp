#include <doctest.h>

#include "entkit/rng.hpp"
#include "entkit/states.hpp"
#include "entkit/suites.hpp"
#include "entkit/tensor_ops.hpp"

using namespace entkit;

namespace {

double mat_dist(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("kron with a scalar factor is the identity") {
  Vec one(1);
  one(0) = 1.0;
  PureState x = random_pure(PartySystem({3}), 5);
  Vec out = kron(one, x.amplitudes);
  CHECK(mat_dist(out, x.amplitudes) == 0.0);
}

TEST_CASE("kron of basis states") {
  Vec zero(2), onev(2);
  zero << 1, 0;
  onev << 0, 1;
  Vec out = kron(zero, onev);
  CHECK(out(0) == cxd(0.0));
  CHECK(out(1) == cxd(1.0));
  CHECK(out(2) == cxd(0.0));
  CHECK(out(3) == cxd(0.0));
}

TEST_CASE("kron of two Bell pairs traces back to a Bell density each side") {
  DensityMatrix bell = to_density(make_bell());
  DensityMatrix both = kron(bell, bell);
  CHECK(both.system.party_count() == 4);
  // direct matrix oracle
  Mat oracle = kron_mat(bell.matrix, bell.matrix);
  CHECK(mat_dist(both.matrix, oracle) < 1e-14);
  CHECK(mat_dist(partial_trace(both, {0, 1}).matrix, bell.matrix) < 1e-12);
  CHECK(mat_dist(partial_trace(both, {2, 3}).matrix, bell.matrix) < 1e-12);
}

TEST_CASE("kron size cap") {
  Vec big = Vec::Ones(1 << 11);
  CHECK_THROWS_AS(kron(big, big), SizeLimitError);
  CHECK_NOTHROW(kron(big, big, Index{1} << 22));
}

TEST_CASE("partial trace of a product state") {
  DensityMatrix a = random_density(PartySystem({2}), 2, 1);
  DensityMatrix b = random_density(PartySystem({3}), 3, 2);
  DensityMatrix ab = kron(a, b);
  CHECK(mat_dist(partial_trace(ab, {0}).matrix, a.matrix) < 1e-12);
  CHECK(mat_dist(partial_trace(ab, {1}).matrix, b.matrix) < 1e-12);
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
  DensityMatrix bell = to_density(make_bell());
  Mat marginal = partial_trace(bell, {0}).matrix;
  CHECK(mat_dist(marginal, Mat::Identity(2, 2) / 2.0) < 1e-14);
}

TEST_CASE("two-party reduction of GHZ") {
  DensityMatrix ghz = to_density(make_ghz());
  Mat red = partial_trace(ghz, {0, 1}).matrix;
  Mat oracle = Mat::Zero(4, 4);  // (|00><00| + |11><11|)/2
  oracle(0, 0) = oracle(3, 3) = 0.5;
  CHECK(mat_dist(red, oracle) < 1e-14);
}

TEST_CASE("partial trace edge cases") {
  DensityMatrix bell = to_density(make_bell());
  CHECK_THROWS_AS(partial_trace(bell, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(bell, {2}), std::invalid_argument);
  // full keep set is allowed
  CHECK(mat_dist(partial_trace(bell, {0, 1}).matrix, bell.matrix) == 0.0);
}

TEST_CASE("partial trace is associative and trace preserving") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DensityMatrix rho = random_density(PartySystem({2, 3, 2}), 6, seed);
    Mat direct = partial_trace(rho, {1}).matrix;
    Mat staged = partial_trace(partial_trace(rho, {0, 1}), {1}).matrix;
    CHECK(mat_dist(direct, staged) < 1e-10);
    Mat other = partial_trace(partial_trace(rho, {1, 2}), {0}).matrix;
    CHECK(mat_dist(direct, other) < 1e-10);
    CHECK(std::abs(partial_trace(rho, {0}).matrix.trace().real() - 1.0) <
          1e-10);
  }
}

TEST_CASE("eigh conventions") {
  Mat half = Mat::Identity(2, 2) / 2.0;
  auto s = eigh(half);
  CHECK(s.eigenvalues(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.eigenvalues(1) == doctest::Approx(0.5).epsilon(1e-12));

  PureState psi = random_pure(PartySystem({2, 2}), 3);
  auto sp = eigh(to_density(psi).matrix);
  CHECK(sp.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(sp.eigenvalues(1)) < 1e-10);

  // separable mixed example: eigenvectors |01>, |10> up to phase
  auto sm = eigh(make_separable_mixed().matrix);
  CHECK(sm.eigenvalues(0) == doctest::Approx(0.5));
  CHECK(sm.eigenvalues(1) == doctest::Approx(0.5));
  for (int c = 0; c < 2; ++c) {
    Vec v = sm.eigenvectors.col(c);
    bool is01 = std::abs(std::abs(v(1)) - 1.0) < 1e-12;
    bool is10 = std::abs(std::abs(v(2)) - 1.0) < 1e-12;
    CHECK((is01 || is10));
  }
}

TEST_CASE("eigh rejects non-Hermitian input") {
  Mat m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(eigh(m), ValidationError);
}

TEST_CASE("eigh reconstruction and orthonormality on random Hermitian input") {
  Rng rng(99);
  for (int k = 0; k < 200; ++k) {
    Index d = 2 + static_cast<Index>(rng.uniform() * 15.0);
    Mat g = rng.ginibre(d, d);
    Mat h = (g + g.adjoint()) / 2.0;
    auto s = eigh(h);
    for (Index i = 1; i < d; ++i) CHECK(s.eigenvalues(i - 1) >= s.eigenvalues(i));
    CHECK((s.eigenvectors.adjoint() * s.eigenvectors - Mat::Identity(d, d))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    Mat rec = s.eigenvectors *
              s.eigenvalues.cast<cxd>().asDiagonal() *
              s.eigenvectors.adjoint();
    CHECK((rec - h).norm() < 1e-9);
    // phase convention: largest-magnitude component real positive
    for (Index c = 0; c < d; ++c) {
      Index peak;
      s.eigenvectors.col(c).cwiseAbs().maxCoeff(&peak);
      CHECK(s.eigenvectors(peak, c).imag() == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(s.eigenvectors(peak, c).real() > 0.0);
    }
  }
}

TEST_CASE("trace distance basics") {
  DensityMatrix bell = to_density(make_bell());
  CHECK(trace_distance(bell, bell) == doctest::Approx(0.0));

  PartySystem q({2});
  DensityMatrix zero = to_density(make_basis_state(q, 0));
  DensityMatrix one = to_density(make_basis_state(q, 1));
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0));

  Vec plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  DensityMatrix plus_d = to_density(PureState{q, plus});
  CHECK(trace_distance(zero, plus_d) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));

  CHECK_THROWS_AS(trace_distance(bell, zero), std::invalid_argument);
}

TEST_CASE("trace distance triangle inequality") {
  PartySystem sys({2, 2});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    DensityMatrix a = random_density(sys, 3, seed);
    DensityMatrix b = random_density(sys, 4, seed + 100);
    DensityMatrix c = random_density(sys, 2, seed + 200);
    CHECK(trace_distance(a, c) <=
          trace_distance(a, b) + trace_distance(b, c) + 1e-9);
  }
}

TEST_CASE("matricize / tensorize round trip") {
  PartySystem sys({2, 3, 2});
  PureState psi = random_pure(sys, 7);
  for (Index r = 0; r < 3; ++r) {
    Mat m = matricize(psi.amplitudes, sys, r);
    Vec back = tensorize(m, sys, r);
    CHECK(mat_dist(back, psi.amplitudes) == 0.0);
  }
}

TEST_CASE("apply_to_party matches full kron application") {
  PartySystem sys({2, 3});
  PureState psi = random_pure(sys, 8);
  Rng rng(4);
  Mat u = rng.haar_unitary(3);
  Vec via_party = apply_to_party(psi.amplitudes, sys, 1, u);
  Mat full = kron_mat(Mat::Identity(2, 2), u);
  Vec via_full = full * psi.amplitudes;
  CHECK(mat_dist(via_party, via_full) < 1e-13);
}
