#include "entkit/states.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "entkit/rng.hpp"
#include "entkit/tensor_ops.hpp"

namespace entkit {

namespace {

void check(std::vector<Violation>& v, const std::string& name, double residual,
           double tol) {
  if (!(residual <= tol)) v.push_back({name, residual});
}

}  // namespace

ValidationReport validate(const PureState& psi) {
  ValidationReport rep;
  const Index total = psi.system.total_dim();
  check(rep.violations, "amplitude-count",
        std::abs(static_cast<double>(psi.amplitudes.size() - total)), 0.0);
  if (psi.amplitudes.size() == total)
    check(rep.violations, "normalization",
          std::abs(psi.amplitudes.squaredNorm() - 1.0), 1e-10);
  return rep;
}

ValidationReport validate(const DensityMatrix& rho) {
  ValidationReport rep;
  const Index total = rho.system.total_dim();
  if (rho.matrix.rows() != total || rho.matrix.cols() != total) {
    rep.violations.push_back(
        {"matrix-shape", static_cast<double>(rho.matrix.rows() - total)});
    return rep;
  }
  check(rep.violations, "hermiticity",
        (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
  check(rep.violations, "trace", std::abs(rho.matrix.trace() - cxd(1.0)),
        1e-10);
  Eigen::SelfAdjointEigenSolver<Mat> es((rho.matrix + rho.matrix.adjoint()) /
                                        2.0);
  double min_eig = es.eigenvalues().minCoeff();
  check(rep.violations, "positivity", std::max(0.0, -min_eig), 1e-10);
  return rep;
}

PureState random_pure(const PartySystem& sys, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x70757265));  // stream tag: pure states
  Vec v(sys.total_dim());
  for (Index i = 0; i < v.size(); ++i) v(i) = rng.gaussian_complex();
  v /= v.norm();
  return {sys, v};
}

DensityMatrix random_density(const PartySystem& sys, Index rank,
                             std::uint64_t seed) {
  const Index total = sys.total_dim();
  if (rank < 1 || rank > total)
    throw std::invalid_argument("random_density: rank out of range");
  Rng rng(mix_seed(seed, 0x64656e73));  // stream tag: densities
  Mat g = rng.ginibre(total, rank);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return {sys, rho};
}

namespace {

using nlohmann::json;

State parse_state_json(const json& j) {
  if (!j.is_object()) throw ValidationError("state file: not a JSON object");
  for (const char* field : {"kind", "dims", "data"})
    if (!j.contains(field))
      throw ValidationError(std::string("state file: missing field \"") +
                            field + "\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "pure" && kind != "density")
    throw ValidationError("state file: kind must be \"pure\" or \"density\"");

  std::vector<Index> dims;
  for (const auto& d : j.at("dims")) {
    Index v = d.get<Index>();
    if (v < 1) throw ValidationError("state file: dims entries must be >= 1");
    dims.push_back(v);
  }
  PartySystem sys(dims);
  const Index total = sys.total_dim();
  const Index expected = (kind == "pure") ? total : total * total;

  const auto& data = j.at("data");
  if (static_cast<Index>(data.size()) != expected)
    throw ValidationError("state file: expected " + std::to_string(expected) +
                          " data entries, found " + std::to_string(data.size()));
  Vec flat(expected);
  Index k = 0;
  for (const auto& entry : data) {
    if (!entry.is_array() || entry.size() != 2)
      throw ValidationError("state file: data entries must be [re, im] pairs");
    flat(k++) = cxd(entry[0].get<double>(), entry[1].get<double>());
  }

  if (kind == "pure") {
    PureState psi{sys, flat};
    double res = std::abs(flat.squaredNorm() - 1.0);
    if (res > 1e-8)
      throw ValidationError("state file: pure state not normalized (residual " +
                            std::to_string(res) + ")");
    return psi;
  }
  Mat m(total, total);
  for (Index r = 0; r < total; ++r)
    for (Index c = 0; c < total; ++c) m(r, c) = flat(r * total + c);
  DensityMatrix rho{sys, m};
  double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  double tr = std::abs(m.trace() - cxd(1.0));
  if (herm > 1e-8)
    throw ValidationError("state file: density not Hermitian (residual " +
                          std::to_string(herm) + ")");
  if (tr > 1e-8)
    throw ValidationError("state file: density trace != 1 (residual " +
                          std::to_string(tr) + ")");
  return rho;
}

}  // namespace

State parse_state(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("state file: ") + e.what());
  }
  return parse_state_json(j);
}

State read_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open state file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str());
}

std::string state_to_json(const State& state) {
  json j;
  const bool pure = std::holds_alternative<PureState>(state);
  j["kind"] = pure ? "pure" : "density";
  const PartySystem& sys =
      pure ? std::get<PureState>(state).system : std::get<DensityMatrix>(state).system;
  j["dims"] = sys.dims;
  json data = json::array();
  if (pure) {
    const Vec& a = std::get<PureState>(state).amplitudes;
    for (Index i = 0; i < a.size(); ++i)
      data.push_back({a(i).real(), a(i).imag()});
  } else {
    const Mat& m = std::get<DensityMatrix>(state).matrix;
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = 0; c < m.cols(); ++c)
        data.push_back({m(r, c).real(), m(r, c).imag()});
  }
  j["data"] = std::move(data);
  return j.dump(2);
}

void write_state(const State& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << state_to_json(state) << "\n";
}

}  // namespace entkit
