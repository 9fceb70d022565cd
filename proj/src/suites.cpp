#include "entkit/suites.hpp"

#include <cmath>

#include "entkit/rng.hpp"
#include "entkit/states.hpp"
#include "entkit/tensor_ops.hpp"

namespace entkit {

PureState make_basis_state(const PartySystem& sys, Index idx) {
  Vec v = Vec::Zero(sys.total_dim());
  v(idx) = 1.0;
  return {sys, v};
}

PureState make_bell() {
  Vec v = Vec::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return {PartySystem({2, 2}), v};
}

PureState make_ghz(Index parties) {
  PartySystem sys(std::vector<Index>(parties, 2));
  Vec v = Vec::Zero(sys.total_dim());
  v(0) = v(sys.total_dim() - 1) = 1.0 / std::sqrt(2.0);
  return {sys, v};
}

PureState make_w() {
  Vec v = Vec::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return {PartySystem({2, 2, 2}), v};
}

DensityMatrix make_separable_mixed() {
  Mat m = Mat::Zero(4, 4);
  m(1, 1) = m(2, 2) = 0.5;
  return {PartySystem({2, 2}), m};
}

std::vector<AdditivityCase> additivity_suite() {
  PartySystem one_qubit({2});
  PartySystem two_qubits({2, 2});
  DensityMatrix zero = to_density(make_basis_state(one_qubit, 0));
  DensityMatrix zz = to_density(make_basis_state(two_qubits, 0));
  DensityMatrix bell = to_density(make_bell());
  DensityMatrix ghz = to_density(make_ghz());
  DensityMatrix mixed_a = random_density(two_qubits, 2, 11);
  DensityMatrix mixed_b = random_density(two_qubits, 2, 12);
  DensityMatrix mixed_1q = random_density(one_qubit, 2, 13);

  return {
      {"zero x zero", zero, zero},
      {"product2q x zero", zz, zero},
      {"bell x bell", bell, bell},
      {"bell x zero", bell, zero},
      {"ghz x zero", ghz, zero},
      {"ghz x bell", ghz, bell},
      {"rank2 x zero", mixed_a, zero},
      {"rank2 x bell", mixed_a, bell},
      {"rank2-1q x zero", mixed_1q, zero},
      {"rank2 x rank2", mixed_a, mixed_b},
  };
}

ContinuityCase make_continuity_pair(std::uint64_t seed, double mix_scale) {
  Rng rng(mix_seed(seed, 0x636f6e74));  // stream tag: continuity
  const bool three = (rng.uniform() < 0.5);
  PartySystem sys(three ? std::vector<Index>{2, 2, 2}
                        : std::vector<Index>{2, 2});
  const Index max_rank = std::min<Index>(4, sys.total_dim());
  const Index rank =
      1 + static_cast<Index>(rng.uniform() * static_cast<double>(max_rank));

  DensityMatrix rho = random_density(sys, rank, seed * 2 + 1);

  // Perturbation supported on range(rho) so both purifications share a
  // layout and the optimizer tracks continuously.
  HermitianSpectrum spec = eigh(rho.matrix);
  Mat v = spec.eigenvectors.leftCols(rank);
  Mat g = rng.ginibre(rank, rank);
  Mat small = g * g.adjoint();
  small /= small.trace().real();
  Mat tau = v * small * v.adjoint();

  double t = mix_scale * (0.002 + 0.02 * rng.uniform());
  ContinuityCase out;
  out.rho = rho;
  out.sigma = {sys, (1.0 - t) * rho.matrix + t * tau};
  out.mix = t;
  return out;
}

}  // namespace entkit
