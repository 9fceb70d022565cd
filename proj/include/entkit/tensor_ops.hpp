#pragma once

#include <vector>

#include "entkit/types.hpp"

namespace entkit {

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending,
/// eigenvector phases fixed (largest-magnitude component real positive).
struct HermitianSpectrum {
  RVec eigenvalues;   // descending
  Mat eigenvectors;   // column i pairs with eigenvalues[i]
};

Vec kron(const Vec& a, const Vec& b, Index size_cap = kDefaultSizeCap);
Mat kron_mat(const Mat& a, const Mat& b, Index size_cap = kDefaultSizeCap);

PureState kron(const PureState& a, const PureState& b,
               Index size_cap = kDefaultSizeCap);
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b,
                   Index size_cap = kDefaultSizeCap);

/// Trace out every party not in `keep`. Party indices are 0-based;
/// the result's parties follow the ascending order of `keep`.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<Index>& keep);

/// Hermitian eigendecomposition with the module's deterministic
/// conventions. Eigenvalues within 1e-10 of [0,1] boundaries are clamped.
/// Throws ValidationError if the input is not Hermitian within 1e-10.
HermitianSpectrum eigh(const Mat& m);

/// Half the sum of singular values of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Transpose the factors listed in `parties` (0-based).
Mat partial_transpose(const DensityMatrix& rho,
                      const std::vector<Index>& parties);

/// Apply a unitary to one tensor factor of a state vector.
Vec apply_to_party(const Vec& amps, const PartySystem& sys, Index party,
                   const Mat& u);

/// Matricize a state vector along one party: result is d_party x (rest),
/// column index is the row-major composite of the remaining parties.
Mat matricize(const Vec& amps, const PartySystem& sys, Index party);

/// Inverse of matricize.
Vec tensorize(const Mat& m, const PartySystem& sys, Index party);

}  // namespace entkit
