#include "entkit/purification.hpp"

#include "entkit/tensor_ops.hpp"

namespace entkit {

Purification purify(const DensityMatrix& rho) {
  const auto& dims = rho.system.dims;
  const Index n = rho.system.party_count();
  HermitianSpectrum spec = eigh(rho.matrix);

  Index rank = 0;
  while (rank < spec.eigenvalues.size() && spec.eigenvalues(rank) > kZeroEigTol)
    ++rank;
  if (rank == 0) throw ValidationError("purify: input has zero trace");

  std::vector<Index> anc(n, 2);
  anc[n - 1] = std::max<Index>(rank, 2);

  std::vector<Index> out_dims(n);
  for (Index r = 0; r < n; ++r) out_dims[r] = dims[r] * anc[r];
  PartySystem out_sys(out_dims);
  auto out_strides = out_sys.strides();
  auto in_strides = rho.system.strides();

  Vec amps = Vec::Zero(out_sys.total_dim());
  const Index total = rho.system.total_dim();
  for (Index i = 0; i < rank; ++i) {
    const double w = std::sqrt(spec.eigenvalues(i));
    for (Index h = 0; h < total; ++h) {
      cxd a = spec.eigenvectors(h, i);
      if (a == cxd(0.0)) continue;
      // Combined local index: h_r * anc_r + a_r with all ancillas |0>
      // except the last, which carries |i>.
      Index rem = h, out = 0;
      for (Index r = 0; r < n; ++r) {
        Index hr = rem / in_strides[r];
        rem %= in_strides[r];
        Index local = hr * anc[r] + (r == n - 1 ? i : 0);
        out += local * out_strides[r];
      }
      amps(out) += w * a;
    }
  }
  return {{out_sys, std::move(amps)}, std::move(anc), rank};
}

DensityMatrix trace_back(const Purification& p, const PartySystem& source_sys) {
  const Index n = source_sys.party_count();
  // Re-read each merged party as two factors (H_r, A_r); the composite
  // index is unchanged.
  std::vector<Index> split;
  for (Index r = 0; r < n; ++r) {
    split.push_back(source_sys.dims[r]);
    split.push_back(p.ancilla_dims[r]);
  }
  DensityMatrix full{PartySystem(split),
                     p.state.amplitudes * p.state.amplitudes.adjoint()};
  std::vector<Index> keep;
  for (Index r = 0; r < n; ++r) keep.push_back(2 * r);
  return partial_trace(full, keep);
}

}  // namespace entkit
