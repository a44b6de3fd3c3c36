#include "ymdec/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "ymdec/axioms.hpp"
#include "ymdec/boundary.hpp"
#include "ymdec/builtin.hpp"
#include "ymdec/dynamics.hpp"
#include "ymdec/errors.hpp"
#include "ymdec/hodge.hpp"
#include "ymdec/homology.hpp"
#include "ymdec/mesh_io.hpp"
#include "ymdec/symplectic.hpp"
#include "ymdec/ym2d.hpp"

namespace ymdec::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RegionMesh load(const ExperimentConfig& c) {
  if (c.mesh.empty()) throw PreconditionError("--mesh is required");
  return load_mesh(c.mesh, c.labels.empty() ? std::nullopt : std::optional<std::string>(c.labels));
}

Eigen::VectorXd gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

RunResult run_decompose(const ExperimentConfig& c) {
  const RegionMesh M = load(c);
  const Tolerances& tol = c.tolerances;
  const int k = c.degree;
  if (k < 0 || k > M.dim()) throw PreconditionError("--degree must lie in [0, " + std::to_string(M.dim()) + "]");
  const int trials = c.trials > 0 ? c.trials : 100;
  const Dec dec(M);
  const HmfDecomposer hmf(dec, k, tol.rank_relative);
  std::mt19937_64 rng(c.seed);

  double reconstruction = 0.0, orthogonality = 0.0, idempotence = 0.0, stokes = 0.0;
  Eigen::Vector4d energy = Eigen::Vector4d::Zero();
  for (int t = 0; t < trials; ++t) {
    const Cochain alpha = dec.cochain(k, gaussian(rng, dec.count(k)));
    const HmfDecomposition h = hmf.decompose(alpha);
    reconstruction = std::max(reconstruction, h.residual_norm / h.input_norm);
    orthogonality = std::max(orthogonality, h.max_cross_inner);
    const Cochain* parts[4] = {&h.exact_dirichlet, &h.coexact_neumann, &h.harmonic_neumann, &h.harmonic_exact};
    for (int i = 0; i < 4; ++i) {
      energy(i) += dec.inner_product(*parts[i], *parts[i]) / (h.input_norm * h.input_norm) / trials;
      const HmfDecomposition again = hmf.decompose(*parts[i]);
      const Cochain* same[4] = {&again.exact_dirichlet, &again.coexact_neumann, &again.harmonic_neumann,
                                &again.harmonic_exact};
      idempotence = std::max(idempotence, dec.norm(*same[i] - *parts[i]) / h.input_norm);
    }
    if (k >= 1) {
      const Cochain beta = dec.cochain(k - 1, gaussian(rng, dec.count(k - 1)));
      stokes = std::max(stokes, dec.adjointness(beta, alpha).relative());
    }
  }

  Json result = {{"degree", k},
                 {"trials", trials},
                 {"dims",
                  {{"cochains", dec.count(k)},
                   {"exact_dirichlet", hmf.exact_dirichlet_range().dim()},
                   {"coexact_neumann", hmf.coexact_neumann_range().dim()},
                   {"harmonic_neumann", hmf.harmonic().basis.dim()}}},
                 {"mean_energy_fraction",
                  {{"exact_dirichlet", energy(0)},
                   {"coexact_neumann", energy(1)},
                   {"harmonic_neumann", energy(2)},
                   {"harmonic_exact", energy(3)}}},
                 {"max_reconstruction", reconstruction},
                 {"max_orthogonality", orthogonality},
                 {"max_idempotence", idempotence},
                 {"max_adjointness_defect", stokes}};
  const bool ok = reconstruction <= tol.hmf && orthogonality <= tol.hmf && idempotence <= tol.hmf_idempotence &&
                  stokes <= tol.stokes;
  result["passed"] = ok;
  return {envelope(c.command, M.name(), c.seed, tol, ok, std::move(result)), ok};
}

RunResult run_harmonic(const ExperimentConfig& c) {
  const RegionMesh M = load(c);
  const Tolerances& tol = c.tolerances;
  const Dec dec(M);
  Json degrees = Json::array();
  bool ok = true;
  for (int k = 0; k <= M.dim(); ++k) {
    const HarmonicBasis hn = harmonic_neumann_basis(dec, k, tol.rank_relative);
    const HarmonicBasis hd = harmonic_dirichlet_basis(dec, k, tol.rank_relative);
    const int b = betti_oracle(M.complex(), k);
    const int rb = relative_betti_oracle(M.complex(), k);
    const bool row_ok = hn.basis.dim() == b && hd.basis.dim() == rb && hn.max_residual <= tol.harmonic &&
                        hd.max_residual <= tol.harmonic;
    ok = ok && row_ok;
    degrees.push_back({{"degree", k},
                       {"betti", b},
                       {"neumann_dim", hn.basis.dim()},
                       {"neumann_residual", hn.max_residual},
                       {"relative_betti", rb},
                       {"dirichlet_dim", hd.basis.dim()},
                       {"dirichlet_residual", hd.max_residual},
                       {"passed", row_ok}});
  }
  Json result = {{"dim", M.dim()}, {"degrees", std::move(degrees)}, {"passed", ok}};
  return {envelope(c.command, M.name(), c.seed, tol, ok, std::move(result)), ok};
}

RunResult run_verify_lagrangian(const ExperimentConfig& c) {
  const RegionMesh M = load(c);
  const LagrangianReport r = verify_lagrangian(M, c.tolerances);
  return {envelope(c.command, M.name(), c.seed, c.tolerances, r.lagrangian, to_json(r)), r.lagrangian};
}

RunResult run_verify_axioms(const ExperimentConfig& c) {
  const RegionMesh M = load(c);
  AxiomOptions opt;
  opt.seed = c.seed;
  opt.tol = c.tolerances;
  if (c.trials > 0) opt.trials = c.trials;
  if (c.inject_fault) opt.fault = StarFault{};
  const AxiomReport r = verify_axioms(M, opt);
  Json result = to_json(r);
  result["fault_injected"] = c.inject_fault;
  const bool ok = r.all_passed();
  return {envelope(c.command, M.name(), c.seed, c.tolerances, ok, std::move(result)), ok};
}

RunResult run_glue(const ExperimentConfig& c) {
  builtin::GluePreset g;
  if (c.face_a.empty() && c.face_b.empty() && c.matching.empty()) {
    if (c.mesh.empty()) throw PreconditionError("--mesh is required");
    auto preset = builtin::is_builtin_spec(c.mesh) ? builtin::glue_preset(c.mesh) : std::nullopt;
    if (!preset) throw PreconditionError("'" + c.mesh + "' is not a glue preset; pass --face-a, --face-b and --matching");
    g = std::move(*preset);
  } else {
    if (c.face_a.empty() || c.face_b.empty() || c.matching.empty())
      throw PreconditionError("--face-a, --face-b and --matching go together");
    g = {load(c), c.face_a, c.face_b, parse_matching(c.matching)};
  }
  const GluingReport r = gluing_check(g.mesh, g.face_a, g.face_b, g.matching, c.tolerances);
  if (!c.export_path.empty()) {
    const RegionMesh glued = glue(g.mesh, g.face_a, g.face_b, g.matching);
    save_off(glued, c.export_path);
    write_label_sidecar(glued, c.export_path + ".labels.json");
  }
  return {envelope(c.command, g.mesh.name(), c.seed, c.tolerances, r.passed, to_json(r)), r.passed};
}

RunResult run_ym2d(const ExperimentConfig& c) {
  const RegionMesh M = load(c);
  const Tolerances& tol = c.tolerances;
  const LineReport line = lagrangian_line_check(M, tol);
  const auto sigma = std::make_shared<const HypersurfaceMesh>(boundary_complex(M));
  const ReducedFormReport form = reduced_form_check(*sigma, tol);

  // Large gauge shifts c -> c + 2 pi / L land on the same cylinder point; half shifts do not.
  const double L = form.length;
  const Reduced2dDatum base{1.0, line.slope};
  const CylinderPoint p0 = holonomy_quotient(base, *sigma);
  const CylinderPoint p1 = holonomy_quotient({base.c + kTwoPi / L, base.c_dot}, *sigma);
  const CylinderPoint ph = holonomy_quotient({base.c + 0.5 * kTwoPi / L, base.c_dot}, *sigma);
  const double invariance = circle_distance(p0.angle, p1.angle) + std::abs(p0.fiber - p1.fiber);
  const double separation = circle_distance(p0.angle, ph.angle);

  // The same invariance through the lattice of harmonic period shifts on the boundary.
  const PeriodBasis periods = integer_period_basis(Dec(*sigma));
  const BoundaryDatum d0 = constant_datum(sigma, base);
  std::vector<long long> winding(periods.generators.size(), 0);
  if (!winding.empty()) winding[0] = 1;
  const BoundaryDatum d1 = large_gauge_orbit(d0, winding, periods);
  const CylinderPoint q0 = holonomy_quotient(d0), q1 = holonomy_quotient(d1);
  const double lattice_invariance = circle_distance(q0.angle, q1.angle) + std::abs(q0.fiber - q1.fiber);

  // omega vanishes between two data on the line.
  const Reduced2dDatum a{1.0, line.slope}, b{-0.7, -0.7 * line.slope};
  const double w = omega(constant_datum(sigma, a), constant_datum(sigma, b));
  const double w_scale = 0.5 * L * (std::abs(a.c * b.c_dot) + std::abs(b.c * a.c_dot));
  const double line_isotropy = std::abs(w) / w_scale;

  Json quotient = {{"base", {{"angle", p0.angle}, {"fiber", p0.fiber}}},
                   {"winding_shift", {{"angle", p1.angle}, {"fiber", p1.fiber}}},
                   {"invariance", invariance},
                   {"lattice_invariance", lattice_invariance},
                   {"half_shift_separation", separation}};
  const bool quotient_ok = invariance <= tol.holonomy && lattice_invariance <= tol.holonomy && separation > tol.holonomy;
  const bool form_ok = form.kappa_matches_formula && form.discrepancy_flag && std::abs(form.self_pair) == 0.0;
  const bool ok = line.passed && form_ok && quotient_ok && line_isotropy <= tol.isotropy;

  Json result = {{"line", to_json(line)},
                 {"reduced_form", to_json(form)},
                 {"holonomy_quotient", std::move(quotient)},
                 {"line_isotropy", line_isotropy}};
  if (!c.sweep.empty()) result["sweep"] = to_json(line_sweep(c.sweep, tol));
  result["passed"] = ok;
  return {envelope(c.command, M.name(), c.seed, tol, ok, std::move(result)), ok};
}

std::string output_path(const ExperimentConfig& c) {
  if (!c.output.empty()) return c.output;
  const char* dir = std::getenv(kOutputDirEnv);
  if (dir == nullptr || *dir == '\0') return {};
  return (std::filesystem::path(dir) / (c.command + "." + c.format)).string();
}

std::string summary(const ExperimentConfig& c, const RunResult& r) {
  return c.command + " " + r.report.value("mesh", std::string()) + ": " + (r.passed ? "pass" : "FAIL");
}

}  // namespace

void apply_tolerance(Tolerances& tol, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw PreconditionError("--tol expects name=value, got '" + assignment + "'");
  const std::string name = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  double value = 0.0;
  std::size_t used = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw PreconditionError("--tol " + name + ": '" + text + "' is not a number");
  tol.set(name, value);
}

std::map<int, int> parse_matching(const std::string& text) {
  std::map<int, int> m;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("matching entry '" + item + "' needs the form a:b");
    try {
      std::size_t u1 = 0, u2 = 0;
      const std::string lhs = item.substr(0, colon), rhs = item.substr(colon + 1);
      const int a = std::stoi(lhs, &u1), b = std::stoi(rhs, &u2);
      if (u1 != lhs.size() || u2 != rhs.size()) throw ParseError("");
      if (!m.emplace(a, b).second) throw ParseError("vertex " + lhs + " matched twice");
    } catch (const ParseError& e) {
      if (*e.what() != '\0') throw;
      throw ParseError("matching entry '" + item + "' is not a pair of integers");
    } catch (const std::exception&) {
      throw ParseError("matching entry '" + item + "' is not a pair of integers");
    }
  }
  if (m.empty()) throw ParseError("empty matching");
  return m;
}

RunResult run(const ExperimentConfig& config) {
  if (config.format != "json" && config.format != "csv")
    throw PreconditionError("--format must be json or csv");
  if (config.command == "decompose") return run_decompose(config);
  if (config.command == "harmonic") return run_harmonic(config);
  if (config.command == "verify-lagrangian") return run_verify_lagrangian(config);
  if (config.command == "verify-axioms") return run_verify_axioms(config);
  if (config.command == "glue") return run_glue(config);
  if (config.command == "ym2d") return run_ym2d(config);
  throw PreconditionError("unknown command '" + config.command + "'");
}

std::string render(const ExperimentConfig& config, const RunResult& result) {
  if (config.format == "json") return result.report.dump(2) + "\n";
  const Json& res = result.report["result"];
  if (config.command == "ym2d" && res.contains("sweep")) {
    std::string out = "N,area,perimeter,slope,residual\n";
    for (const auto& row : res["sweep"])
      out += row["N"].dump() + "," + row["area"].dump() + "," + row["perimeter"].dump() + "," +
             row["slope"].dump() + "," + row["residual"].dump() + "\n";
    return out;
  }
  return to_csv(result.report);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete exterior calculus checks for abelian Yang-Mills boundary data", "ymdec"};
  app.require_subcommand(1);
  ExperimentConfig cfg;
  std::vector<std::string> tol_assignments;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--mesh", cfg.mesh, "builtin spec (disk:N=64, annulus:N=32, ...) or OFF path")->required();
    sub->add_option("--labels", cfg.labels, "face-label sidecar (JSON) for OFF input");
    sub->add_option("--tol", tol_assignments, "tolerance override name=value (repeatable)");
    sub->add_option("--out", cfg.output, "report path (default: $YMDEC_OUTPUT_DIR/<command>.<format>, else stdout)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", cfg.seed, "random seed");
  };

  auto* decompose = app.add_subcommand("decompose", "HMF decomposition of random cochains");
  common(decompose);
  decompose->add_option("--degree", cfg.degree, "cochain degree");
  decompose->add_option("--trials", cfg.trials, "random cochains (default 100)");
  common(app.add_subcommand("harmonic", "harmonic field dimensions against the Betti oracles"));
  common(app.add_subcommand("verify-lagrangian", "isotropy, coisotropy and half dimension of the solution image"));
  auto* axioms = app.add_subcommand("verify-axioms", "per-axiom verification suite");
  common(axioms);
  axioms->add_option("--trials", cfg.trials, "random trials per check (default 5)");
  axioms->add_flag("--inject-fault", cfg.inject_fault, "negate one degree-2 star weight in the action");
  auto* glue_cmd = app.add_subcommand("glue", "gluing check on a preset or on two faces of a mesh");
  common(glue_cmd);
  glue_cmd->add_option("--face-a", cfg.face_a, "first face label");
  glue_cmd->add_option("--face-b", cfg.face_b, "second face label");
  glue_cmd->add_option("--matching", cfg.matching, "vertex bijection a:b,...");
  glue_cmd->add_option("--export", cfg.export_path, "write the glued mesh as OFF (sidecar next to it)");
  auto* ym2d = app.add_subcommand("ym2d", "two-dimensional line, reduced form and holonomy quotient");
  common(ym2d);
  ym2d->add_option("--sweep", cfg.sweep, "disk polygon counts for the slope sweep")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  RunResult result;
  try {
    for (const auto& a : tol_assignments) apply_tolerance(cfg.tolerances, a);
    result = run(cfg);
  } catch (const NumericalError& e) {
    err << "ymdec: numerical failure: " << e.what() << "\n";
    return kExitFailed;
  } catch (const Error& e) {
    err << "ymdec: " << e.what() << "\n";
    return kExitConfig;
  }

  const std::string text = render(cfg, result);
  const std::string path = output_path(cfg);
  if (path.empty()) {
    out << text;
  } else {
    std::error_code ec;
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) {
      err << "ymdec: cannot write '" << path << "'\n";
      return kExitConfig;
    }
    out << summary(cfg, result) << " -> " << path << "\n";
  }
  return result.passed ? kExitOk : kExitFailed;
}

}  // namespace ymdec::cli
