#include "entkit/tensor_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entkit {

namespace {

void check_cap(Index n, Index cap, const char* what) {
  if (n > cap)
    throw SizeLimitError(std::string(what) + ": result exceeds amplitude cap");
}

std::vector<Index> concat_dims(const PartySystem& a, const PartySystem& b) {
  std::vector<Index> d = a.dims;
  d.insert(d.end(), b.dims.begin(), b.dims.end());
  return d;
}

}  // namespace

Vec kron(const Vec& a, const Vec& b, Index size_cap) {
  check_cap(a.size() * b.size(), size_cap, "kron");
  Vec out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Mat kron_mat(const Mat& a, const Mat& b, Index size_cap) {
  check_cap(a.rows() * b.rows(), size_cap, "kron");
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

PureState kron(const PureState& a, const PureState& b, Index size_cap) {
  return {PartySystem(concat_dims(a.system, b.system)),
          kron(a.amplitudes, b.amplitudes, size_cap)};
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b,
                   Index size_cap) {
  return {PartySystem(concat_dims(a.system, b.system)),
          kron_mat(a.matrix, b.matrix, size_cap)};
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<Index>& keep) {
  const auto& dims = rho.system.dims;
  const Index n = rho.system.party_count();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::vector<bool> kept(n, false);
  for (Index p : keep) {
    if (p < 0 || p >= n)
      throw std::invalid_argument("partial_trace: party index out of range");
    if (kept[p]) throw std::invalid_argument("partial_trace: duplicate party");
    kept[p] = true;
  }

  std::vector<Index> keep_sorted, traced;
  for (Index p = 0; p < n; ++p) (kept[p] ? keep_sorted : traced).push_back(p);

  std::vector<Index> kdims, tdims;
  for (Index p : keep_sorted) kdims.push_back(dims[p]);
  for (Index p : traced) tdims.push_back(dims[p]);
  Index dk = 1, dt = 1;
  for (Index d : kdims) dk *= d;
  for (Index d : tdims) dt *= d;

  auto strides = rho.system.strides();
  // Composite input index of (kept multi-index k, traced multi-index t).
  auto compose = [&](Index k, Index t) {
    Index idx = 0;
    for (std::size_t r = keep_sorted.size(); r-- > 0;) {
      idx += (k % kdims[r]) * strides[keep_sorted[r]];
      k /= kdims[r];
    }
    for (std::size_t r = traced.size(); r-- > 0;) {
      idx += (t % tdims[r]) * strides[traced[r]];
      t /= tdims[r];
    }
    return idx;
  };

  Mat out = Mat::Zero(dk, dk);
  for (Index ki = 0; ki < dk; ++ki)
    for (Index kj = 0; kj < dk; ++kj) {
      cxd s = 0.0;
      for (Index t = 0; t < dt; ++t)
        s += rho.matrix(compose(ki, t), compose(kj, t));
      out(ki, kj) = s;
    }
  return {PartySystem(kdims), out};
}

HermitianSpectrum eigh(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigh: not square");
  double herm_res = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_res > 1e-10)
    throw ValidationError("eigh: input not Hermitian (residual " +
                          std::to_string(herm_res) + ")");

  Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
  const Index d = m.rows();
  std::vector<Index> order(d);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    return es.eigenvalues()(i) > es.eigenvalues()(j);
  });

  HermitianSpectrum spec;
  spec.eigenvalues.resize(d);
  spec.eigenvectors.resize(d, d);
  for (Index c = 0; c < d; ++c) {
    double lam = es.eigenvalues()(order[c]);
    if (lam < 0.0 && lam > -1e-10) lam = 0.0;
    if (lam > 1.0 && lam < 1.0 + 1e-10) lam = 1.0;
    spec.eigenvalues(c) = lam;
    Vec v = es.eigenvectors().col(order[c]);
    Index peak = 0;
    double best = -1.0;
    for (Index i = 0; i < d; ++i) {
      double a = std::abs(v(i));
      if (a > best) {
        best = a;
        peak = i;
      }
    }
    if (best > 0.0) v *= std::conj(v(peak)) / best;
    spec.eigenvectors.col(c) = v;
  }
  return spec;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.system == sigma.system))
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Mat diff = rho.matrix - sigma.matrix;
  Eigen::SelfAdjointEigenSolver<Mat> es((diff + diff.adjoint()) / 2.0);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Mat partial_transpose(const DensityMatrix& rho,
                      const std::vector<Index>& parties) {
  const auto& dims = rho.system.dims;
  const Index n = rho.system.party_count();
  std::vector<bool> flip(n, false);
  for (Index p : parties) {
    if (p < 0 || p >= n)
      throw std::invalid_argument("partial_transpose: party out of range");
    flip[p] = true;
  }
  const Index dd = rho.system.total_dim();
  auto strides = rho.system.strides();
  auto digits = [&](Index idx) {
    std::vector<Index> out(n);
    for (Index r = 0; r < n; ++r) {
      out[r] = idx / strides[r];
      idx %= strides[r];
    }
    return out;
  };
  Mat out(dd, dd);
  for (Index i = 0; i < dd; ++i) {
    auto di = digits(i);
    for (Index j = 0; j < dd; ++j) {
      auto dj = digits(j);
      Index ri = 0, rj = 0;
      for (Index r = 0; r < n; ++r) {
        Index a = flip[r] ? dj[r] : di[r];
        Index b = flip[r] ? di[r] : dj[r];
        ri += a * strides[r];
        rj += b * strides[r];
      }
      out(ri, rj) = rho.matrix(i, j);
    }
  }
  return out;
}

Vec apply_to_party(const Vec& amps, const PartySystem& sys, Index party,
                   const Mat& u) {
  const Index d = sys.dims[party];
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument("apply_to_party: unitary side mismatch");
  auto strides = sys.strides();
  const Index s = strides[party];
  const Index blocks = amps.size() / (d * s);
  Vec out(amps.size());
  for (Index b = 0; b < blocks; ++b) {
    const Index base = b * d * s;
    for (Index q = 0; q < s; ++q) {
      for (Index i = 0; i < d; ++i) {
        cxd acc = 0.0;
        for (Index j = 0; j < d; ++j) acc += u(i, j) * amps(base + j * s + q);
        out(base + i * s + q) = acc;
      }
    }
  }
  return out;
}

Mat matricize(const Vec& amps, const PartySystem& sys, Index party) {
  const Index d = sys.dims[party];
  auto strides = sys.strides();
  const Index s = strides[party];
  const Index blocks = amps.size() / (d * s);
  Mat m(d, blocks * s);
  for (Index b = 0; b < blocks; ++b)
    for (Index q = 0; q < s; ++q)
      for (Index i = 0; i < d; ++i)
        m(i, b * s + q) = amps(b * d * s + i * s + q);
  return m;
}

Vec tensorize(const Mat& m, const PartySystem& sys, Index party) {
  const Index d = sys.dims[party];
  auto strides = sys.strides();
  const Index s = strides[party];
  const Index blocks = m.cols() / s;
  Vec amps(sys.total_dim());
  for (Index b = 0; b < blocks; ++b)
    for (Index q = 0; q < s; ++q)
      for (Index i = 0; i < d; ++i)
        amps(b * d * s + i * s + q) = m(i, b * s + q);
  return amps;
}

}  // namespace entkit
