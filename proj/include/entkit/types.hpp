#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace entkit {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

/// Raised when an input fails a structural invariant (hermiticity, trace,
/// normalization, schema).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a requested object would exceed the amplitude cap.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default cap on the number of amplitudes of any composite state.
inline constexpr Index kDefaultSizeCap = Index{1} << 20;

/// Eigenvalues below this are treated as exact zeros (numerical rank).
inline constexpr double kZeroEigTol = 1e-12;

/// Ordered list of local Hilbert-space dimensions, one per party.
/// Party 0 is the most significant factor of the row-major composite index.
struct PartySystem {
  std::vector<Index> dims;

  PartySystem() = default;
  explicit PartySystem(std::vector<Index> d) : dims(std::move(d)) {
    if (dims.empty()) throw std::invalid_argument("PartySystem: no parties");
    for (Index d_r : dims)
      if (d_r < 1) throw std::invalid_argument("PartySystem: dimension < 1");
  }

  Index party_count() const { return static_cast<Index>(dims.size()); }

  Index total_dim() const {
    Index n = 1;
    for (Index d : dims) n *= d;
    return n;
  }

  /// Row-major strides: stride of the last party is 1.
  std::vector<Index> strides() const {
    std::vector<Index> s(dims.size());
    Index acc = 1;
    for (std::size_t r = dims.size(); r-- > 0;) {
      s[r] = acc;
      acc *= dims[r];
    }
    return s;
  }

  friend bool operator==(const PartySystem& a, const PartySystem& b) {
    return a.dims == b.dims;
  }
};

/// Normalized state vector over a PartySystem (row-major amplitude order).
struct PureState {
  PartySystem system;
  Vec amplitudes;
};

/// Hermitian, PSD, unit-trace matrix over a PartySystem.
/// Row and column indices are both row-major composite indices.
struct DensityMatrix {
  PartySystem system;
  Mat matrix;
};

inline DensityMatrix to_density(const PureState& psi) {
  return {psi.system, psi.amplitudes * psi.amplitudes.adjoint()};
}

}  // namespace entkit
