#pragma once

#include <cstdint>
#include <random>

#include "entkit/types.hpp"

namespace entkit {

/// splitmix64, used to derive independent stream seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic RNG. Gaussian samples come from Box-Muller over raw
/// mt19937_64 words so sequences do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cxd gaussian_complex() { return {gaussian(), gaussian()}; }

  /// Ginibre matrix with i.i.d. standard complex Gaussian entries.
  Mat ginibre(Index rows, Index cols) {
    Mat g(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) g(i, j) = gaussian_complex();
    return g;
  }

  /// Haar-distributed unitary via QR of a Ginibre matrix with the
  /// R-diagonal phase correction.
  Mat haar_unitary(Index d) {
    Mat g = ginibre(d, d);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < d; ++j) {
      cxd rjj = r(j, j);
      double m = std::abs(rjj);
      q.col(j) *= (m > 0.0) ? rjj / m : cxd(1.0, 0.0);
    }
    return q;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace entkit
