#include "entkit/gsd.hpp"

#include <algorithm>
#include <cmath>

#include "entkit/rng.hpp"
#include "entkit/states.hpp"
#include "entkit/tensor_ops.hpp"

namespace entkit {

namespace {

constexpr double kLogEps = 1e-12;    // smoothing inside logs
constexpr double kCoeffCut = 1e-6;   // cleanup threshold on |C| (weight 1e-12)
constexpr double kTieTol = 1e-12;

double smoothed_entropy(const Vec& c) {
  double s = 0.0;
  for (Index i = 0; i < c.size(); ++i) {
    double p = std::norm(c(i));
    s -= p * std::log2(p + kLogEps);
  }
  return s;
}

double smoothed_entropy(const Mat& c) {
  double s = 0.0;
  for (Index j = 0; j < c.cols(); ++j)
    for (Index i = 0; i < c.rows(); ++i) {
      double p = std::norm(c(i, j));
      s -= p * std::log2(p + kLogEps);
    }
  return s;
}

struct RestartResult {
  Vec coefficients;
  std::vector<Mat> unitaries;
  double objective;
  int sweeps;
  bool converged;
  std::vector<double> history;
};

/// One optimization run from the given initial unitaries.
RestartResult run_restart(const PureState& psi, std::vector<Mat> us,
                          const GsdConfig& cfg) {
  const PartySystem& sys = psi.system;
  const Index n = sys.party_count();
  constexpr double kLn2 = 0.6931471805599453;

  Vec t = psi.amplitudes;
  for (Index r = 0; r < n; ++r) t = apply_to_party(t, sys, r, us[r]);

  RestartResult res;
  res.history.push_back(smoothed_entropy(t));
  std::vector<double> step(n, 0.5);  // last accepted geodesic step per party
  res.converged = false;
  int flat_sweeps = 0;

  int sweep = 0;
  for (; sweep < cfg.max_iterations; ++sweep) {
    double f_before = res.history.back();
    double f_cur = f_before;

    for (Index r = 0; r < n; ++r) {
      const Index d = sys.dims[r];
      if (d == 1) continue;
      Mat m = matricize(t, sys, r);

      // Euclidean gradient of the smoothed entropy w.r.t. conj(C).
      Mat w(m.rows(), m.cols());
      for (Index jj = 0; jj < m.cols(); ++jj)
        for (Index ii = 0; ii < m.rows(); ++ii) {
          double p2 = std::norm(m(ii, jj));
          double q = p2 + kLogEps;
          w(ii, jj) = -m(ii, jj) * (std::log2(q) + p2 / (q * kLn2));
        }

      // Riemannian descent direction on U(d): skew part of M W^dagger.
      Mat b = m * w.adjoint();
      Mat dir = b - b.adjoint();
      double dnorm = dir.norm();
      if (dnorm < 1e-13) continue;
      dir /= dnorm;

      // Geodesic exp(t*dir) via the spectrum of the Hermitian i*dir.
      Eigen::SelfAdjointEigenSolver<Mat> es(cxd(0.0, 1.0) * dir);
      const Mat& v = es.eigenvectors();
      const RVec& theta = es.eigenvalues();
      Mat vm = v.adjoint() * m;
      auto rotate = [&](double tau) -> Mat {
        Vec ph(d);
        for (Index k = 0; k < d; ++k)
          ph(k) = std::exp(cxd(0.0, -theta(k) * tau));
        return v * ph.asDiagonal() * vm;
      };

      // Backtracking line search with one-sided expansion.
      double slope = -dnorm;  // df/dtau at 0 along dir
      double tau = step[r];
      Mat cand;
      double f_cand = 0.0;
      bool accepted = false;
      for (int bt = 0; bt < 40; ++bt) {
        cand = rotate(tau);
        f_cand = smoothed_entropy(cand);
        if (f_cand <= f_cur + 1e-4 * tau * slope) {
          accepted = true;
          break;
        }
        tau *= 0.5;
        if (tau < 1e-14) break;
      }
      if (!accepted) continue;
      for (int ex = 0; ex < 8; ++ex) {
        Mat wide = rotate(2.0 * tau);
        double f_wide = smoothed_entropy(wide);
        if (f_wide < f_cand) {
          tau *= 2.0;
          cand.swap(wide);
          f_cand = f_wide;
        } else {
          break;
        }
      }

      step[r] = tau;
      f_cur = f_cand;
      t = tensorize(cand, sys, r);
      Vec ph(d);
      for (Index k = 0; k < d; ++k) ph(k) = std::exp(cxd(0.0, -theta(k) * tau));
      us[r] = v * ph.asDiagonal() * v.adjoint() * us[r];
    }

    res.history.push_back(f_cur);
    if (f_before - f_cur < cfg.tolerance) {
      if (++flat_sweeps >= 2) {
        res.converged = true;
        ++sweep;
        break;
      }
    } else {
      flat_sweeps = 0;
    }
  }

  res.sweeps = sweep;
  res.coefficients = std::move(t);
  res.unitaries = std::move(us);
  res.objective = res.history.back();
  return res;
}

std::vector<Mat> hosvd_init(const PureState& psi) {
  const Index n = psi.system.party_count();
  std::vector<Mat> us(n);
  for (Index r = 0; r < n; ++r) {
    Mat m = matricize(psi.amplitudes, psi.system, r);
    HermitianSpectrum spec = eigh(m * m.adjoint());
    us[r] = spec.eigenvectors.adjoint();
  }
  return us;
}

/// Sorted-descending |C|; larger sequence wins ties between restarts.
bool lex_larger(const Vec& a, const Vec& b) {
  std::vector<double> sa(a.size()), sb(b.size());
  for (Index i = 0; i < a.size(); ++i) sa[i] = std::abs(a(i));
  for (Index i = 0; i < b.size(); ++i) sb[i] = std::abs(b(i));
  std::sort(sa.rbegin(), sa.rend());
  std::sort(sb.rbegin(), sb.rend());
  return std::lexicographical_compare(sb.begin(), sb.end(), sa.begin(),
                                      sa.end());
}

}  // namespace

double iu_entropy_unchecked(const Vec& coeffs) {
  double s = 0.0;
  for (Index i = 0; i < coeffs.size(); ++i) {
    double p = std::norm(coeffs(i));
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

PureState apply_local_unitaries(const PureState& psi,
                                const std::vector<Mat>& us) {
  const Index n = psi.system.party_count();
  if (static_cast<Index>(us.size()) != n)
    throw std::invalid_argument("apply_local_unitaries: need one unitary per party");
  Vec t = psi.amplitudes;
  for (Index r = 0; r < n; ++r) {
    if (us[r].rows() != psi.system.dims[r] ||
        us[r].cols() != psi.system.dims[r])
      throw std::invalid_argument("apply_local_unitaries: unitary side mismatch");
    t = apply_to_party(t, psi.system, r, us[r]);
  }
  return {psi.system, std::move(t)};
}

SchmidtForm gsd(const PureState& psi, const GsdConfig& config) {
  if (config.restarts < 1)
    throw std::invalid_argument("gsd: restarts must be >= 1");
  auto rep = validate(psi);
  if (!rep.ok()) throw ValidationError("gsd: invalid pure state");

  const Index n = psi.system.party_count();
  RestartResult best;
  bool have_best = false;

  for (int k = 0; k < config.restarts; ++k) {
    std::vector<Mat> init;
    if (k == 0) {
      init = hosvd_init(psi);
    } else {
      Rng rng(mix_seed(config.seed, 0x677364'00ULL + static_cast<std::uint64_t>(k)));
      init.resize(n);
      for (Index r = 0; r < n; ++r) init[r] = rng.haar_unitary(psi.system.dims[r]);
    }
    RestartResult res = run_restart(psi, std::move(init), config);
    if (!have_best || res.objective < best.objective - kTieTol ||
        (std::abs(res.objective - best.objective) <= kTieTol &&
         lex_larger(res.coefficients, best.coefficients))) {
      best = std::move(res);
      have_best = true;
    }
  }

  // Cleanup: drop negligible coefficients, renormalize, report the exact
  // entropy of the cleaned tensor.
  Vec c = best.coefficients;
  for (Index i = 0; i < c.size(); ++i)
    if (std::abs(c(i)) < kCoeffCut) c(i) = 0.0;
  double nrm = c.norm();
  if (nrm > 0.0) c /= nrm;
  Index terms = 0;
  for (Index i = 0; i < c.size(); ++i)
    if (c(i) != cxd(0.0)) ++terms;

  SchmidtForm form;
  form.system = psi.system;
  form.coefficients = std::move(c);
  form.local_unitaries = std::move(best.unitaries);
  form.objective = iu_entropy_unchecked(form.coefficients);
  form.schmidt_terms = terms;
  form.diagnostics.restarts = config.restarts;
  form.diagnostics.iterations = best.sweeps;
  form.diagnostics.converged = best.converged;
  form.diagnostics.objective_history = std::move(best.history);
  return form;
}

}  // namespace entkit
