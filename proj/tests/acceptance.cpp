// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "support.hpp"
#include "ymdec/boundary.hpp"
#include "ymdec/cli.hpp"
#include "ymdec/dynamics.hpp"
#include "ymdec/hodge.hpp"
#include "ymdec/symplectic.hpp"
#include "ymdec/ym2d.hpp"

using namespace ymdec;
using namespace ymdec::testing;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const std::vector<std::string> kBuiltins = {"tri1",        "hexagon",     "disk:N=16",      "disk:N=64",
                                            "annulus:N=16", "ann8",        "square:N=4",     "strip:N=4",
                                            "two-annuli:N=8", "two-squares", "tetrahedron", "cube:N=2",
                                            "solid-torus:N=6", "sphere"};

const std::vector<std::string> kLagrangianMeshes = {"disk:N=16", "annulus:N=16", "square:N=4", "tetrahedron"};

Outcome stokes() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (const auto& spec : kBuiltins) {
    const Dec dec(builtin::from_spec(spec));
    for (int k = 1; k <= dec.dim(); ++k)
      for (int t = 0; t < 100; ++t) {
        const Cochain beta = dec.cochain(k - 1, gaussian(rng, dec.count(k - 1)));
        const Cochain alpha = dec.cochain(k, gaussian(rng, dec.count(k)));
        worst = std::max(worst, dec.adjointness(beta, alpha).relative());
      }
  }
  return {worst <= 1e-12, "max relative defect " + fmt(worst) + " over " + std::to_string(kBuiltins.size()) +
                              " meshes"};
}

Outcome betti() {
  const std::vector<std::pair<std::string, int>> cases = {
      {"disk:N=16", 0}, {"annulus:N=16", 1}, {"two-annuli:N=8", 2}, {"solid-torus:N=6", 1}};
  bool ok = true;
  std::ostringstream s;
  for (const auto& [spec, expected] : cases) {
    const RegionMesh M = builtin::from_spec(spec);
    const int h = harmonic_neumann_basis(Dec(M), 1).basis.dim();
    const int b = betti_oracle(M.complex(), 1);
    ok = ok && h == expected && b == expected;
    s << (s.tellp() > 0 ? "; " : "") << spec << " " << h << "/" << b;
  }
  return {ok, s.str()};
}

Outcome hmf() {
  std::mt19937_64 rng(103);
  double orth = 0.0, recon = 0.0;
  for (const auto& spec : kBuiltins) {
    const Dec dec(builtin::from_spec(spec));
    for (int k = 0; k <= dec.dim(); ++k) {
      const HmfDecomposer h(dec, k);
      for (int t = 0; t < 100; ++t) {
        const HmfDecomposition d = h.decompose(dec.cochain(k, gaussian(rng, dec.count(k))));
        orth = std::max(orth, d.max_cross_inner);
        recon = std::max(recon, d.residual_norm / d.input_norm);
      }
    }
  }
  return {orth <= 1e-10 && recon <= 1e-10, "orthogonality " + fmt(orth) + ", reconstruction " + fmt(recon)};
}

Outcome isotropy() {
  double worst = 0.0;
  bool ok = true;
  for (const auto& spec : kLagrangianMeshes) {
    const LagrangianReport r = verify_lagrangian(builtin::from_spec(spec));
    worst = std::max({worst, r.isotropy_max, r.isotropy_image});
    ok = ok && r.isotropic;
  }
  return {ok && worst <= 1e-11, "max relative omega " + fmt(worst)};
}

Outcome half_dimension() {
  bool ok = true;
  double angle = 0.0;
  std::ostringstream s;
  Tolerances tol;
  tol.rank_relative = 1e-8;
  tol.principal_angle = 1e-7;
  for (const auto& spec : kLagrangianMeshes) {
    const LagrangianReport r = verify_lagrangian(builtin::from_spec(spec), tol);
    for (double a : r.coisotropy_angles) angle = std::max(angle, a);
    ok = ok && 2 * r.dim_image == r.dim_boundary_space && r.coisotropic && r.lagrangian;
    s << spec << " " << r.dim_image << "/" << r.dim_boundary_space << "; ";
  }
  s << "max angle " << fmt(angle);
  return {ok && angle <= 1e-7, s.str()};
}

Outcome line() {
  double worst = 0.0;
  bool ok = true;
  for (int N : {6, 16, 64}) {
    const LineReport r = lagrangian_line_check(builtin::disk(N));
    worst = std::max(worst, r.max_residual);
    ok = ok && r.passed;
  }
  const RegionMesh H = builtin::from_spec("hexagon");
  std::vector<Eigen::Vector2d> rim;
  for (int i = 1; i <= 6; ++i) rim.emplace_back(H.geometry().vertex_coords(i, 0), H.geometry().vertex_coords(i, 1));
  const double area = shoelace(rim);
  const double target = 6.0 / (3.0 * std::sqrt(3.0) / 2.0);
  const LineReport h = lagrangian_line_check(H);
  const double err = std::max(rel(h.measured_slope, target), rel(6.0 / area, target));
  return {ok && worst <= 1e-12 && err <= 1e-12,
          "max residual " + fmt(worst) + ", hexagon slope " + std::to_string(h.measured_slope) + " (error " + fmt(err) +
              ")"};
}

Outcome identities() {
  std::mt19937_64 rng(107);
  double bracket_worst = 0.0, action_worst = 0.0;
  for (const auto& spec : kLagrangianMeshes) {
    const RegionTheory T(builtin::from_spec(spec));
    for (int t = 0; t < 20; ++t) {
      const Cochain a = T.solution(gaussian(rng, T.solutions().basis.dim()));
      const Cochain b = T.solution(gaussian(rng, T.solutions().basis.dim()));
      bracket_worst = std::max(bracket_worst, bracket_identity(T.trace(a), T.trace(b)).relative());
      action_worst = std::max(action_worst, action_identity(a, b, T.dec()).relative());
    }
  }
  return {bracket_worst <= 1e-11 && action_worst <= 1e-11,
          "bracket " + fmt(bracket_worst) + ", action " + fmt(action_worst)};
}

Outcome factorization() {
  std::mt19937_64 rng(108);
  double worst = 0.0;
  for (const auto& spec : {"square:N=4", "ann8", "annulus:N=16", "cube:N=2"}) {
    const auto S = std::make_shared<const HypersurfaceMesh>(boundary_complex(builtin::from_spec(spec)));
    const int m = S->complex().count(1);
    for (int t = 0; t < 50; ++t) {
      const BoundaryDatum a = make_datum(S, gaussian(rng, m), gaussian(rng, m));
      const BoundaryDatum b = make_datum(S, gaussian(rng, m), gaussian(rng, m));
      worst = std::max(worst, face_factorization_check(*S, a, b).relative());
    }
  }
  return {worst <= 1e-12, "max relative " + fmt(worst)};
}

Outcome gluing() {
  bool ok = true;
  double worst = 0.0;
  std::ostringstream s;
  for (const auto& g : {builtin::two_squares_preset(), builtin::strip_preset(4)}) {
    const GluingReport r = gluing_check(g.mesh, g.face_a, g.face_b, g.matching);
    ok = ok && r.dim_equalizer == r.dim_glued_solutions && r.passed;
    worst = std::max(worst, r.action_residual);
    s << g.mesh.name() << " " << r.dim_equalizer << "/" << r.dim_glued_solutions << "; ";
  }
  s << "action " << fmt(worst);
  return {ok && worst <= 1e-11, s.str()};
}

Outcome gauge() {
  std::mt19937_64 rng(110);
  bool exact = true;
  for (const auto& spec : kLagrangianMeshes) {
    const Dec dec(builtin::from_spec(spec));
    for (int t = 0; t < 20; ++t) {
      const Cochain a = dec.cochain(1, integers(rng, dec.count(1)));
      const Cochain df = dec.d(dec.cochain(0, integers(rng, dec.count(0))));
      exact = exact && action(a + df, dec) == action(a, dec);
    }
  }
  double idem = 0.0, hol = 0.0;
  for (const auto& spec : {"ann8", "annulus:N=16", "solid-torus:N=6"}) {
    const auto S = std::make_shared<const HypersurfaceMesh>(boundary_complex(builtin::from_spec(spec)));
    const Dec D(*S);
    const int m = S->complex().count(1);
    const PeriodBasis P = integer_period_basis(D);
    for (int t = 0; t < 10; ++t) {
      const BoundaryDatum x = gauge_fix_coclosed(make_datum(S, gaussian(rng, m), gaussian(rng, m)));
      const BoundaryDatum y = gauge_fix_coclosed(x);
      idem = std::max(idem, (y.phi.values - x.phi.values).norm() / x.phi.values.norm());
      std::vector<long long> w(P.generators.size());
      for (auto& k : w) k = static_cast<long long>(integers(rng, 1, -3, 3)(0));
      const BoundaryDatum z = large_gauge_orbit(x, w, P);
      for (const auto& g : P.generators)
        hol = std::max(hol, circle_distance(holonomy(x.phi, g).circle, holonomy(z.phi, g).circle));
    }
  }
  return {exact && idem <= 1e-10 && hol <= 1e-10, std::string("action exact ") + (exact ? "yes" : "no") +
                                                      ", gauge fix " + fmt(idem) + ", holonomy " + fmt(hol)};
}

Outcome discrepancy() {
  cli::ExperimentConfig cfg;
  cfg.command = "ym2d";
  cfg.mesh = "disk:N=16";
  const cli::RunResult r = cli::run(cfg);
  const Json& f = r.report["result"]["reduced_form"];
  const double kappa = f["kappa"].get<double>();
  const bool flag = f["discrepancy_flag"].get<bool>();
  return {flag && std::abs(kappa - 0.5) <= 1e-12 && r.passed,
          "kappa " + std::to_string(kappa) + ", flag " + (flag ? "true" : "false")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"discrete Stokes adjointness", stokes},
      {"Betti agreement", betti},
      {"HMF decomposition", hmf},
      {"isotropy of the solution image", isotropy},
      {"Lagrangian half dimension and coisotropy", half_dimension},
      {"2D quotiented line", line},
      {"bracket and action identities", identities},
      {"face factorization", factorization},
      {"gluing equalizer and action", gluing},
      {"gauge properties", gauge},
      {"reduced form discrepancy flag", discrepancy},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.passed;
    std::printf("%s %2zu %s: %s (%.2fs)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
