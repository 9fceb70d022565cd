#include "entkit/measures.hpp"

#include <cmath>

#include "entkit/purification.hpp"
#include "entkit/states.hpp"
#include "entkit/tensor_ops.hpp"

namespace entkit {

namespace {

void require_valid(const DensityMatrix& rho, const char* who) {
  auto rep = validate(rho);
  if (!rep.ok())
    throw ValidationError(std::string(who) + ": invalid density matrix (" +
                          rep.violations.front().invariant + ")");
}

}  // namespace

double iu_entropy(const Vec& coeffs) {
  double res = std::abs(coeffs.squaredNorm() - 1.0);
  if (res > 1e-8)
    throw ValidationError("iu_entropy: coefficients not normalized (residual " +
                          std::to_string(res) + ")");
  return iu_entropy_unchecked(coeffs);
}

MeasureResult measure_m1(const DensityMatrix& rho, const GsdConfig& cfg) {
  require_valid(rho, "measure_m1");
  Purification p = purify(rho);
  SchmidtForm form = gsd(p.state, cfg);
  MeasureResult out;
  out.value = form.objective;
  out.method = "m1";
  out.schmidt_terms = form.schmidt_terms;
  out.converged = form.diagnostics.converged;
  out.components.push_back(
      {1.0, form.objective, form.schmidt_terms, form.diagnostics.converged});
  return out;
}

MeasureResult measure_m1(const PureState& psi, const GsdConfig& cfg) {
  return measure_m1(to_density(psi), cfg);
}

MeasureResult measure_m2(const DensityMatrix& rho, M2Variant variant,
                         const GsdConfig& cfg) {
  require_valid(rho, "measure_m2");
  HermitianSpectrum spec = eigh(rho.matrix);
  MeasureResult out;
  out.method = variant == M2Variant::Average ? "m2-average" : "m2-joint";
  out.converged = true;
  double avg = 0.0, mix = 0.0;
  for (Index i = 0; i < spec.eigenvalues.size(); ++i) {
    double p = spec.eigenvalues(i);
    if (p <= kZeroEigTol) continue;
    PureState comp{rho.system, spec.eigenvectors.col(i)};
    SchmidtForm form = gsd(comp, cfg);
    avg += p * form.objective;
    mix -= p * std::log2(p);
    out.components.push_back(
        {p, form.objective, form.schmidt_terms, form.diagnostics.converged});
    out.schmidt_terms = std::max(out.schmidt_terms, form.schmidt_terms);
    out.converged = out.converged && form.diagnostics.converged;
  }
  out.value = variant == M2Variant::Average ? avg : avg + mix;
  return out;
}

MeasureResult measure(const DensityMatrix& rho, Method method,
                      const GsdConfig& cfg) {
  switch (method) {
    case Method::M1: return measure_m1(rho, cfg);
    case Method::M2Average: return measure_m2(rho, M2Variant::Average, cfg);
    default: return measure_m2(rho, M2Variant::Joint, cfg);
  }
}

double check_additivity(const DensityMatrix& rho, const DensityMatrix& sigma,
                        Method method, const GsdConfig& cfg, Index size_cap) {
  double m_both;
  if (method == Method::M1) {
    // Purify factor by factor so each factor's spectral index stays on a
    // party of that factor. The joint density's standard purification puts
    // the composite index on a single party, which is not locally
    // equivalent and carries extra cross-factor entanglement.
    PureState both = kron(purify(rho).state, purify(sigma).state, size_cap);
    SchmidtForm form = gsd(both, cfg);
    m_both = form.objective;
  } else {
    DensityMatrix both = kron(rho, sigma, size_cap);
    m_both = measure(both, method, cfg).value;
  }
  double m_rho = measure(rho, method, cfg).value;
  double m_sigma = measure(sigma, method, cfg).value;
  return std::abs(m_both - m_rho - m_sigma);
}

namespace {

/// Embed a coefficient tensor into a larger per-party layout (zero padding).
Vec pad_tensor(const Vec& amps, const PartySystem& from,
               const PartySystem& to) {
  auto fs = from.strides();
  auto ts = to.strides();
  Vec out = Vec::Zero(to.total_dim());
  for (Index i = 0; i < amps.size(); ++i) {
    Index rem = i, j = 0;
    for (Index r = 0; r < from.party_count(); ++r) {
      j += (rem / fs[r]) * ts[r];
      rem %= fs[r];
    }
    out(j) = amps(i);
  }
  return out;
}

}  // namespace

ContinuityCheck check_continuity(const DensityMatrix& rho,
                                 const DensityMatrix& sigma,
                                 const GsdConfig& cfg) {
  if (!(rho.system == sigma.system))
    throw std::invalid_argument("check_continuity: systems differ");
  Purification pr = purify(rho);
  Purification ps = purify(sigma);
  SchmidtForm fr = gsd(pr.state, cfg);
  SchmidtForm fs = gsd(ps.state, cfg);

  std::vector<Index> common(pr.state.system.dims.size());
  for (std::size_t r = 0; r < common.size(); ++r)
    common[r] =
        std::max(pr.state.system.dims[r], ps.state.system.dims[r]);
  PartySystem padded(common);
  Vec cr = pad_tensor(fr.coefficients, fr.system, padded);
  Vec cs = pad_tensor(fs.coefficients, fs.system, padded);
  DensityMatrix dr{padded, cr * cr.adjoint()};
  DensityMatrix ds{padded, cs * cs.adjoint()};

  ContinuityCheck out;
  out.composite_dim = padded.total_dim();
  out.epsilon = trace_distance(dr, ds);
  out.lhs = std::abs(fr.objective - fs.objective);
  out.bound = out.epsilon * std::log2(static_cast<double>(out.composite_dim));
  out.holds = out.lhs <= out.bound + 1e-12;
  return out;
}

double negativity(const DensityMatrix& rho, const std::vector<Index>& partyA) {
  if (partyA.empty() ||
      static_cast<Index>(partyA.size()) >= rho.system.party_count())
    throw std::invalid_argument("negativity: need a proper bipartition");
  Mat pt = partial_transpose(rho, partyA);
  Eigen::SelfAdjointEigenSolver<Mat> es((pt + pt.adjoint()) / 2.0);
  double neg = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < 0.0) neg -= es.eigenvalues()(i);
  return neg;
}

double concurrence2q(const DensityMatrix& rho) {
  if (rho.system.dims != std::vector<Index>{2, 2})
    throw std::invalid_argument("concurrence2q: requires two qubits");
  Mat yy(4, 4);
  yy.setZero();
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  Mat rho_tilde = yy * rho.matrix.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat> es(rho.matrix * rho_tilde);
  std::array<double, 4> s{};
  for (Index i = 0; i < 4; ++i)
    s[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(s.rbegin(), s.rend());
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

double three_tangle(const PureState& psi) {
  if (psi.system.dims != std::vector<Index>{2, 2, 2})
    throw std::invalid_argument("three_tangle: requires three qubits");
  const Vec& v = psi.amplitudes;
  auto a = [&](int i, int j, int k) { return v(i * 4 + j * 2 + k); };
  cxd d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) +
           a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
           a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) +
           a(0, 1, 1) * a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 0);
  cxd d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) +
           a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
           a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) +
           a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
           a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) +
           a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
  cxd d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) +
           a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

}  // namespace entkit
