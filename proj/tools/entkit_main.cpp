#include <cstdio>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entkit/classify.hpp"
#include "entkit/gsd.hpp"
#include "entkit/measures.hpp"
#include "entkit/purification.hpp"
#include "entkit/states.hpp"
#include "entkit/suites.hpp"
#include "entkit/tensor_ops.hpp"

namespace {

using nlohmann::json;
using namespace entkit;

/// Round to 12 significant digits so json output is stable and compact.
double r12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

DensityMatrix as_density(const State& s) {
  if (std::holds_alternative<DensityMatrix>(s))
    return std::get<DensityMatrix>(s);
  return to_density(std::get<PureState>(s));
}

json components_json(const MeasureResult& res) {
  json arr = json::array();
  for (const auto& c : res.components)
    arr.push_back({{"weight", r12(c.weight)},
                   {"entropy", r12(c.entropy)},
                   {"schmidtTerms", c.schmidt_terms},
                   {"converged", c.converged}});
  return arr;
}

struct Options {
  std::string in_path, out_path, with_path;
  std::string method = "m1";
  std::string variant;
  std::string dims_csv;
  GsdConfig gsd;
  int parties = 3;
  int pairs = 200;
  Index rank = 0;
  bool strict = false;
  bool as_json = false;
};

std::vector<Index> parse_dims(const std::string& csv) {
  std::vector<Index> dims;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    std::string tok = csv.substr(pos, comma == std::string::npos
                                          ? std::string::npos
                                          : comma - pos);
    if (tok.empty()) throw std::invalid_argument("bad --dims list");
    dims.push_back(std::stoll(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return dims;
}

Method resolve_method(const Options& opt) {
  std::string m = opt.method;
  if (m == "m2" && opt.variant == "joint") m = "m2joint";
  if (m == "m1") return Method::M1;
  if (m == "m2") return Method::M2Average;
  if (m == "m2joint") return Method::M2Joint;
  throw std::invalid_argument("unknown method: " + opt.method);
}

int cmd_measure(const Options& opt) {
  DensityMatrix rho = as_density(read_state(opt.in_path));
  MeasureResult res = measure(rho, resolve_method(opt), opt.gsd);
  if (opt.as_json) {
    json j = {{"command", "measure"},
              {"method", res.method},
              {"value", r12(res.value)},
              {"schmidtTerms", res.schmidt_terms},
              {"converged", res.converged},
              {"components", components_json(res)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("method: %s\n", res.method.c_str());
    std::printf("value: %.6f bits\n", res.value);
    std::printf("schmidt terms: %lld\n", static_cast<long long>(res.schmidt_terms));
    std::printf("converged: %s\n", res.converged ? "yes" : "no");
  }
  if (opt.strict && !res.converged) return 4;
  return 0;
}

int cmd_classify(const Options& opt) {
  State s = read_state(opt.in_path);
  StructureReport rep = std::holds_alternative<PureState>(s)
                            ? structure_report(std::get<PureState>(s))
                            : structure_report(std::get<DensityMatrix>(s));
  json j = json::parse(report_to_json(rep));
  for (auto& [k, v] : j.at("detectors").items()) v = r12(v.get<double>());

  if (std::holds_alternative<PureState>(s)) {
    const PureState& psi = std::get<PureState>(s);
    bool qubits = true;
    for (Index d : psi.system.dims) qubits = qubits && d == 2;
    if (qubits && psi.system.party_count() <= 4) {
      FullEntanglementReport fe = is_fully_entangled(psi);
      j["fullyEntangled"] = fe.fully_entangled;
      json ev = json::array();
      for (const auto& e : fe.evidence)
        ev.push_back({{"subset", e.subset},
                      {"minNegativity", r12(e.min_score)},
                      {"entangled", e.entangled}});
      j["fullyEntangledEvidence"] = ev;
    }
  }

  if (opt.as_json) {
    j["command"] = "classify";
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("system id: %d\nclass id: %d\nexact: %s\nloops:", rep.system_id,
                rep.class_id, rep.exact ? "yes" : "no");
    if (rep.structure.loops.empty()) std::printf(" (none)");
    for (const auto& loop : rep.structure.loops) {
      std::printf(" {");
      for (std::size_t i = 0; i < loop.size(); ++i)
        std::printf("%s%lld", i ? "," : "", static_cast<long long>(loop[i]));
      std::printf("}");
    }
    std::printf("\n");
    for (const auto& w : rep.warnings) std::printf("warning: %s\n", w.c_str());
  }
  return 0;
}

int cmd_gsd(const Options& opt) {
  State s = read_state(opt.in_path);
  if (!std::holds_alternative<PureState>(s))
    throw std::invalid_argument("gsd: input must be a pure state");
  const PureState& psi = std::get<PureState>(s);
  SchmidtForm form = gsd(psi, opt.gsd);

  if (!opt.out_path.empty())
    write_state(PureState{form.system, form.coefficients}, opt.out_path);

  if (opt.as_json) {
    json coeffs = json::array();
    for (Index i = 0; i < form.coefficients.size(); ++i)
      coeffs.push_back({r12(form.coefficients(i).real()),
                        r12(form.coefficients(i).imag())});
    json j = {{"command", "gsd"},
              {"objective", r12(form.objective)},
              {"schmidtTerms", form.schmidt_terms},
              {"converged", form.diagnostics.converged},
              {"iterations", form.diagnostics.iterations},
              {"restarts", form.diagnostics.restarts},
              {"coefficients", coeffs}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("objective: %.6f bits\n", form.objective);
    std::printf("schmidt terms: %lld\n", static_cast<long long>(form.schmidt_terms));
    std::printf("iterations: %d\n", form.diagnostics.iterations);
    std::printf("converged: %s\n", form.diagnostics.converged ? "yes" : "no");
  }
  if (opt.strict && !form.diagnostics.converged) return 4;
  return 0;
}

int cmd_purify(const Options& opt) {
  DensityMatrix rho = as_density(read_state(opt.in_path));
  Purification p = purify(rho);
  if (!opt.out_path.empty()) write_state(p.state, opt.out_path);
  if (opt.as_json) {
    json amps = json::array();
    for (Index i = 0; i < p.state.amplitudes.size(); ++i)
      amps.push_back({r12(p.state.amplitudes(i).real()),
                      r12(p.state.amplitudes(i).imag())});
    json j = {{"command", "purify"},
              {"dims", p.state.system.dims},
              {"ancillaDims", p.ancilla_dims},
              {"sourceRank", p.source_rank},
              {"amplitudes", amps}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("source rank: %lld\n", static_cast<long long>(p.source_rank));
    std::printf("purified dims:");
    for (Index d : p.state.system.dims)
      std::printf(" %lld", static_cast<long long>(d));
    std::printf("\n");
  }
  return 0;
}

int cmd_enumerate(const Options& opt) {
  StructureEnumeration e = enumerate_structures(opt.parties);
  if (opt.as_json) {
    json j = {{"command", "enumerate"},
              {"parties", e.n},
              {"structureCount", e.structure_count},
              {"classCount", e.class_count}};
    if (e.materialized) {
      json structures = json::array();
      for (const auto& s : e.structures) structures.push_back(s.loops);
      j["structures"] = structures;
      j["classes"] = e.classes;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("parties: %lld\n", static_cast<long long>(e.n));
    std::printf("structures: %llu\n",
                static_cast<unsigned long long>(e.structure_count));
    std::printf("classes: %llu\n",
                static_cast<unsigned long long>(e.class_count));
    if (e.materialized) {
      std::printf("orbit sizes:");
      for (const auto& c : e.classes)
        std::printf(" %zu", c.size());
      std::printf("\n");
    }
  }
  return 0;
}

int cmd_random(const Options& opt) {
  PartySystem sys(parse_dims(opt.dims_csv));
  State s = opt.rank > 0
                ? State(random_density(sys, opt.rank, opt.gsd.seed))
                : State(random_pure(sys, opt.gsd.seed));
  if (!opt.out_path.empty()) {
    write_state(s, opt.out_path);
    if (opt.as_json)
      std::cout << json{{"command", "random"}, {"written", opt.out_path}}.dump(2)
                << "\n";
    else
      std::printf("written: %s\n", opt.out_path.c_str());
  } else {
    std::cout << state_to_json(s) << "\n";
  }
  return 0;
}

int cmd_check(const Options& opt, const std::string& suite) {
  json cases = json::array();
  if (suite == "additivity") {
    int failures = 0;
    for (const auto& c : additivity_suite()) {
      double residual = check_additivity(c.rho, c.sigma, resolve_method(opt),
                                         opt.gsd);
      bool ok = residual < 5e-4;
      failures += ok ? 0 : 1;
      cases.push_back(
          {{"name", c.name}, {"residual", r12(residual)}, {"pass", ok}});
      if (!opt.as_json)
        std::printf("%-18s residual %.2e  %s\n", c.name.c_str(), residual,
                    ok ? "ok" : "FAIL");
    }
    if (opt.as_json)
      std::cout << json{{"command", "check"},
                        {"suite", "additivity"},
                        {"cases", cases},
                        {"failures", failures}}
                       .dump(2)
                << "\n";
    else
      std::printf("failures: %d\n", failures);
    return 0;
  }
  if (suite == "continuity") {
    int violations = 0;
    for (int k = 0; k < opt.pairs; ++k) {
      double scale = 1.0;
      ContinuityCheck chk;
      double mix = 0.0;
      for (int attempt = 0; attempt < 6; ++attempt) {
        ContinuityCase pair =
            make_continuity_pair(opt.gsd.seed + 1000 + k, scale);
        chk = check_continuity(pair.rho, pair.sigma, opt.gsd);
        mix = pair.mix;
        if (chk.epsilon <= 0.05) break;
        scale *= 0.5;
      }
      if (!chk.holds) ++violations;
      cases.push_back({{"epsilon", r12(chk.epsilon)},
                       {"lhs", r12(chk.lhs)},
                       {"bound", r12(chk.bound)},
                       {"mix", r12(mix)},
                       {"holds", chk.holds}});
      if (!opt.as_json && !chk.holds)
        std::printf("violation at pair %d: |dM|=%.3e bound=%.3e eps=%.3e\n", k,
                    chk.lhs, chk.bound, chk.epsilon);
    }
    if (opt.as_json)
      std::cout << json{{"command", "check"},
                        {"suite", "continuity"},
                        {"pairs", opt.pairs},
                        {"violations", violations},
                        {"cases", cases}}
                       .dump(2)
                << "\n";
    else
      std::printf("pairs: %d  violations: %d\n", opt.pairs, violations);
    return 0;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multipartite entanglement measures and classification"};
  app.require_subcommand(1);
  Options opt;
  std::string suite;

  auto add_gsd_flags = [&](CLI::App* c) {
    c->add_option("--restarts", opt.gsd.restarts, "optimizer restarts");
    c->add_option("--maxiter", opt.gsd.max_iterations, "max sweeps per restart");
    c->add_option("--tol", opt.gsd.tolerance, "objective stop tolerance");
    c->add_option("--seed", opt.gsd.seed, "base RNG seed");
    c->add_flag("--json", opt.as_json, "emit a single JSON document");
    c->add_flag("--strict", opt.strict, "nonzero exit on non-convergence");
  };

  auto* measure_cmd = app.add_subcommand("measure", "entanglement measure of a state");
  measure_cmd->add_option("--in", opt.in_path, "state file")->required();
  measure_cmd->add_option("--method", opt.method, "m1 | m2 | m2joint");
  measure_cmd->add_option("--variant", opt.variant, "average | joint (for m2)");
  add_gsd_flags(measure_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "entanglement structure report");
  classify_cmd->add_option("--in", opt.in_path, "state file")->required();
  add_gsd_flags(classify_cmd);

  auto* gsd_cmd = app.add_subcommand("gsd", "generalized Schmidt decomposition");
  gsd_cmd->add_option("--in", opt.in_path, "pure state file")->required();
  gsd_cmd->add_option("--out", opt.out_path, "write canonical tensor here");
  add_gsd_flags(gsd_cmd);

  auto* purify_cmd = app.add_subcommand("purify", "generic purification");
  purify_cmd->add_option("--in", opt.in_path, "state file")->required();
  purify_cmd->add_option("--out", opt.out_path, "write purified state here");
  add_gsd_flags(purify_cmd);

  auto* enum_cmd = app.add_subcommand("enumerate", "loop structures and classes");
  enum_cmd->add_option("--parties", opt.parties, "party count (2..5)")->required();
  add_gsd_flags(enum_cmd);

  auto* random_cmd = app.add_subcommand("random", "seeded random state");
  random_cmd->add_option("--dims", opt.dims_csv, "party dims, e.g. 2,2,2")->required();
  random_cmd->add_option("--rank", opt.rank, "density rank (omit for pure)");
  random_cmd->add_option("--out", opt.out_path, "write state here");
  add_gsd_flags(random_cmd);

  auto* check_cmd = app.add_subcommand("check", "additivity / continuity suites");
  check_cmd->add_option("suite", suite, "additivity | continuity")->required();
  check_cmd->add_option("--pairs", opt.pairs, "continuity pair count");
  check_cmd->add_option("--method", opt.method, "m1 | m2 | m2joint");
  add_gsd_flags(check_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (measure_cmd->parsed()) return cmd_measure(opt);
    if (classify_cmd->parsed()) return cmd_classify(opt);
    if (gsd_cmd->parsed()) return cmd_gsd(opt);
    if (purify_cmd->parsed()) return cmd_purify(opt);
    if (enum_cmd->parsed()) return cmd_enumerate(opt);
    if (random_cmd->parsed()) return cmd_random(opt);
    if (check_cmd->parsed()) return cmd_check(opt, suite);
  } catch (const SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (opt.as_json) std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    return 5;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (opt.as_json) std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (opt.as_json) std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    return 2;
  }
  return 2;
}
