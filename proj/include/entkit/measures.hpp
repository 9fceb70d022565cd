#pragma once

#include <vector>

#include "entkit/gsd.hpp"
#include "entkit/types.hpp"

namespace entkit {

enum class M2Variant { Average, Joint };

struct ComponentInfo {
  double weight = 0.0;
  double entropy = 0.0;  // GSD objective of the component, bits
  Index schmidt_terms = 0;
  bool converged = false;
};

struct MeasureResult {
  double value = 0.0;  // bits
  std::string method;  // "m1" | "m2-average" | "m2-joint"
  Index schmidt_terms = 0;
  bool converged = false;
  std::vector<ComponentInfo> components;  // one entry for m1
};

/// -sum |c|^2 log2 |c|^2 with 0 log 0 = 0. Throws if not normalized
/// within 1e-8.
double iu_entropy(const Vec& coeffs);

/// Purify, run the GSD, report the IU entropy of the canonical tensor.
MeasureResult measure_m1(const DensityMatrix& rho, const GsdConfig& cfg = {});
MeasureResult measure_m1(const PureState& psi, const GsdConfig& cfg = {});

/// Spectral-component measure. Average: sum_i p_i S_IU(gsd(psi_i)).
/// Joint adds the mixing entropy H(p).
MeasureResult measure_m2(const DensityMatrix& rho,
                         M2Variant variant = M2Variant::Average,
                         const GsdConfig& cfg = {});

enum class Method { M1, M2Average, M2Joint };

MeasureResult measure(const DensityMatrix& rho, Method method,
                      const GsdConfig& cfg = {});

/// |M(rho x sigma) - M(rho) - M(sigma)|.
double check_additivity(const DensityMatrix& rho, const DensityMatrix& sigma,
                        Method method = Method::M1, const GsdConfig& cfg = {},
                        Index size_cap = kDefaultSizeCap);

struct ContinuityCheck {
  double epsilon = 0.0;  // trace distance of the GSD-decomposed purifications
  double lhs = 0.0;      // |M(rho) - M(sigma)|
  double bound = 0.0;    // epsilon * log2(N)
  Index composite_dim = 0;
  bool holds = false;
};

ContinuityCheck check_continuity(const DensityMatrix& rho,
                                 const DensityMatrix& sigma,
                                 const GsdConfig& cfg = {});

/// Sum of |negative eigenvalues| of the partial transpose over partyA.
double negativity(const DensityMatrix& rho, const std::vector<Index>& partyA);

/// Wootters concurrence of a two-qubit density matrix.
double concurrence2q(const DensityMatrix& rho);

/// 4 |Cayley hyperdeterminant| of a 3-qubit pure state's amplitude tensor.
double three_tangle(const PureState& psi);

}  // namespace entkit
