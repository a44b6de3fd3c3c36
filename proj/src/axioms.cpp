#include "ymdec/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ymdec/boundary.hpp"
#include "ymdec/builtin.hpp"
#include "ymdec/dynamics.hpp"
#include "ymdec/errors.hpp"
#include "ymdec/homology.hpp"
#include "ymdec/symplectic.hpp"

namespace ymdec {

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.ok(); });
}

const AxiomResult& AxiomReport::get(const std::string& id) const {
  for (const auto& r : results)
    if (r.id == id) return r;
  throw PreconditionError("no result for axiom " + id);
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  Eigen::VectorXd normal(Eigen::Index n) {
    std::normal_distribution<double> d(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = d(rng_);
    return v;
  }
  Eigen::VectorXd integers(Eigen::Index n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = d(rng_);
    return v;
  }
  std::vector<long long> windings(std::size_t n) {
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<long long> w(n);
    for (auto& x : w) x = d(rng_);
    return w;
  }

 private:
  std::mt19937_64 rng_;
};

Check gate(const std::string& name, double value, const std::string& tol_name, const Tolerances& tol) {
  const double limit = tol.get(tol_name);
  return {name, value, tol_name, limit, std::isfinite(value) && value <= limit};
}

Check require(const std::string& name, bool ok, double value = 0.0) {
  Check c;
  c.name = name;
  c.value = value;
  c.passed = ok;
  return c;
}

double rel(double diff, double scale) { return scale > 0.0 ? std::abs(diff) / scale : std::abs(diff); }

double rel(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale > 0.0 ? (a - b).norm() / scale : (a - b).norm();
}

double datum_rel(const BoundaryDatum& a, const BoundaryDatum& b) {
  return std::max(rel(a.phi.values, b.phi.values), rel(a.phi_dot.values, b.phi_dot.values));
}

void finish(AxiomResult& r) {
  if (r.status == "by construction") return;
  const bool ok = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
  r.status = ok ? "pass" : "fail";
}

AxiomResult structural(const std::string& id, const std::string& title, const std::string& detail) {
  AxiomResult r;
  r.id = id;
  r.title = title;
  r.status = "by construction";
  r.detail = detail;
  return r;
}

BoundaryDatum random_datum(Sampler& s, const std::shared_ptr<const HypersurfaceMesh>& host) {
  const Eigen::Index m = host->complex().count(1);
  return make_datum(host, s.normal(m), s.normal(m));
}

// Gauge function on the hypersurface restricted to the vertices of a part.
Eigen::VectorXd restrict_vertices(const Eigen::VectorXd& f, const HypersurfaceMesh& host,
                                  const HypersurfaceMesh& part) {
  const auto& amb = part.ambient_index(0);
  Eigen::VectorXd out(static_cast<Eigen::Index>(amb.size()));
  for (std::size_t i = 0; i < amb.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = f(host.local_index(0, amb[i]));
  return out;
}

struct Context {
  const RegionMesh& M;
  const AxiomOptions& opt;
  const RegionTheory& T;
  const Dec& action_dec;
  Sampler& rng;
  const Tolerances& tol() const { return opt.tol; }
  bool has_boundary() const { return !T.sigma().empty(); }
  Cochain random_solution() { return T.solution(rng.normal(T.solutions().basis.dim())); }
};

AxiomResult axiom4(Context& c) {
  AxiomResult r;
  r.id = "A4";
  r.title = "Symplectic potential";
  double eq00 = 0.0, eq2 = 0.0, lin = 0.0;
  for (int t = 0; t < c.opt.trials; ++t) {
    const Cochain eta = c.random_solution();
    const Cochain xi = c.random_solution();
    eq00 = std::max(eq00, action_identity(eta, xi, c.action_dec).relative());
    const Cochain X = c.action_dec.cochain(1, c.rng.normal(c.action_dec.count(1)));
    const Cochain Y = c.action_dec.cochain(1, c.rng.normal(c.action_dec.count(1)));
    const double lhs = theta(eta, X * 2.0 + Y * -3.0, c.action_dec);
    const double rhs = 2.0 * theta(eta, X, c.action_dec) - 3.0 * theta(eta, Y, c.action_dec);
    lin = std::max(lin, rel(lhs - rhs, std::abs(lhs) + std::abs(rhs)));
    if (c.has_boundary())
      eq2 = std::max(eq2, bracket_identity(c.T.trace(eta), c.T.trace(xi)).relative());
  }
  r.checks.push_back(gate("action_potential_identity", eq00, "identity", c.tol()));
  r.checks.push_back(gate("bracket_identity", eq2, "identity", c.tol()));
  r.checks.push_back(gate("potential_linearity", lin, "identity", c.tol()));
  r.detail = "theta(eta, X) = -2 sum over boundary edges of X_e (d1^T S2 d1 eta)_e";
  finish(r);
  return r;
}

AxiomResult axiom5(Context& c) {
  AxiomResult r;
  r.id = "A5";
  r.title = "Involution";
  if (!c.has_boundary()) {
    r.detail = "empty boundary";
    r.checks.push_back(require("empty_boundary", true));
    finish(r);
    return r;
  }
  double flip_omega = 0.0, flip_bracket = 0.0;
  for (int t = 0; t < c.opt.trials; ++t) {
    const BoundaryDatum a = random_datum(c.rng, c.T.sigma_ptr());
    const BoundaryDatum b = random_datum(c.rng, c.T.sigma_ptr());
    const BoundaryDatum ra = reversed(a);
    const BoundaryDatum rb = make_datum(ra.host, b.phi.values, b.phi_dot.values);
    const double w = omega(a, b);
    flip_omega = std::max(flip_omega, rel(omega(ra, rb) + w, std::abs(w)));
    const double br = bracket(a, b);
    flip_bracket = std::max(flip_bracket, rel(bracket(ra, rb) + br, std::abs(br)));
  }
  r.checks.push_back(gate("omega_sign_flip", flip_omega, "identity", c.tol()));
  r.checks.push_back(gate("bracket_sign_flip", flip_bracket, "identity", c.tol()));
  finish(r);
  return r;
}

AxiomResult axiom6(Context& c) {
  AxiomResult r;
  r.id = "A6";
  r.title = "Disjoint regions";
  const RegionMesh U = disjoint_union(c.M, c.M, "a_", "b_", c.M.name() + "+" + c.M.name());
  const RegionTheory TU(U, c.tol());
  const SimplicialComplex& cm = c.M.complex();
  const int nv = cm.num_vertices();
  std::vector<int> first, second;
  for (const auto& e : cm.simplices(1)) {
    first.push_back(U.complex().find({e[0], e[1]}));
    second.push_back(U.complex().find({e[0] + nv, e[1] + nv}));
  }
  auto embed = [&](const Cochain& a, const Cochain& b) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(U.complex().count(1));
    for (std::size_t e = 0; e < first.size(); ++e) {
      v(first[e]) = a.values(static_cast<Eigen::Index>(e));
      v(second[e]) = b.values(static_cast<Eigen::Index>(e));
    }
    return TU.dec().cochain(1, v);
  };
  double act = 0.0, om = 0.0;
  for (int t = 0; t < c.opt.trials; ++t) {
    const Cochain e1 = c.random_solution(), e2 = c.random_solution();
    const Cochain x1 = c.random_solution(), x2 = c.random_solution();
    const Cochain eu = embed(e1, e2), xu = embed(x1, x2);
    const double s1 = action(e1, c.T.dec()), s2 = action(e2, c.T.dec());
    act = std::max(act, rel(action(eu, TU.dec()) - s1 - s2, s1 + s2));
    if (c.has_boundary()) {
      const double w1 = omega(c.T.trace(e1), c.T.trace(x1));
      const double w2 = omega(c.T.trace(e2), c.T.trace(x2));
      const double wu = omega(TU.trace(eu), TU.trace(xu));
      const double scale = std::abs(bracket(c.T.trace(e1), c.T.trace(x1))) +
                           std::abs(bracket(c.T.trace(x1), c.T.trace(e1))) +
                           std::abs(bracket(c.T.trace(e2), c.T.trace(x2))) +
                           std::abs(bracket(c.T.trace(x2), c.T.trace(e2)));
      om = std::max(om, rel(wu - w1 - w2, scale));
    }
  }
  r.checks.push_back(gate("action_additivity", act, "identity", c.tol()));
  r.checks.push_back(gate("omega_additivity", om, "identity", c.tol()));
  r.checks.push_back(require("solution_dimension_doubles",
                             TU.solutions().basis.dim() == 2 * c.T.solutions().basis.dim(),
                             TU.solutions().basis.dim()));
  finish(r);
  return r;
}

AxiomResult axiom7(Context& c) {
  AxiomResult r;
  r.id = "A7";
  r.title = "Factorization of fields on hypersurfaces";
  if (!c.has_boundary()) {
    r.detail = "empty boundary";
    r.checks.push_back(require("empty_boundary", true));
    finish(r);
    return r;
  }
  double worst = 0.0;
  for (int t = 0; t < c.opt.trials; ++t) {
    const BoundaryDatum a = random_datum(c.rng, c.T.sigma_ptr());
    const BoundaryDatum b = random_datum(c.rng, c.T.sigma_ptr());
    worst = std::max(worst, face_factorization_check(c.T.sigma(), a, b).relative());
    const BoundaryDatum sa = c.T.trace(c.random_solution());
    const BoundaryDatum sb = c.T.trace(c.random_solution());
    worst = std::max(worst, face_factorization_check(c.T.sigma(), sa, sb).relative());
  }
  r.checks.push_back(gate("bracket_factorization", worst, "factorization", c.tol()));
  r.detail = std::to_string(c.T.sigma().labels().size()) + " labeled faces";
  finish(r);
  return r;
}

AxiomResult axiom8(Context& c) {
  AxiomResult r;
  r.id = "A8";
  r.title = "Gauge action";
  const Dec& dec = c.action_dec;
  const int ne = dec.count(1), nv = dec.count(0);
  bool exact = true;
  double real = 0.0, trace_gauge = 0.0, omega_gauge = 0.0, fix_idem = 0.0, orbit = 0.0, hol = 0.0;
  for (int t = 0; t < c.opt.trials; ++t) {
    const Cochain ei = dec.cochain(1, c.rng.integers(ne, -5, 5));
    const Cochain fi = dec.cochain(0, c.rng.integers(nv, -5, 5));
    exact = exact && action(ei + dec.d(fi), dec) == action(ei, dec);
    const Cochain er = dec.cochain(1, c.rng.normal(ne));
    const Cochain fr = dec.cochain(0, c.rng.normal(nv));
    const double s = action(er, dec);
    real = std::max(real, rel(action(er + dec.d(fr), dec) - s, s));

    if (!c.has_boundary()) continue;
    const HypersurfaceMesh& S = c.T.sigma();
    const Cochain eta = c.random_solution();
    const Cochain xi = c.random_solution();
    Eigen::VectorXd f_sigma(S.complex().count(0));
    for (int i = 0; i < f_sigma.size(); ++i) f_sigma(i) = fr.values(S.ambient_index(0)[i]);
    const GaugeTransformation g{f_sigma, {}};
    const BoundaryDatum a = c.T.trace(eta);
    const BoundaryDatum b = c.T.trace(xi);
    trace_gauge = std::max(trace_gauge, datum_rel(c.T.trace(eta + c.T.dec().d(fr)), apply_gauge(a, g)));
    const double w = omega(a, b);
    const double scale = std::abs(bracket(a, b)) + std::abs(bracket(b, a));
    omega_gauge = std::max(omega_gauge, rel(omega(apply_gauge(a, g), b) - w, scale));

    const BoundaryDatum rnd = random_datum(c.rng, c.T.sigma_ptr());
    const BoundaryDatum fixed = gauge_fix_coclosed(rnd, c.T.projector());
    fix_idem = std::max(fix_idem, datum_rel(gauge_fix_coclosed(fixed, c.T.projector()), fixed));
    orbit = std::max(orbit, datum_rel(gauge_fix_coclosed(apply_gauge(rnd, g), c.T.projector()), fixed));
  }
  if (c.has_boundary()) {
    const Dec sdec(c.T.sigma());
    const PeriodBasis periods = integer_period_basis(sdec);
    if (periods.basis.cols() > 0) {
      for (int t = 0; t < c.opt.trials; ++t) {
        const BoundaryDatum a = random_datum(c.rng, c.T.sigma_ptr());
        const std::vector<long long> w = c.rng.windings(periods.generators.size());
        const BoundaryDatum shifted = large_gauge_orbit(a, w, periods);
        for (const Cycle& gamma : periods.generators)
          hol = std::max(hol, circle_distance(holonomy(shifted.phi, gamma).circle,
                                              holonomy(a.phi, gamma).circle));
      }
    }
    r.detail = "boundary b1 = " + std::to_string(periods.basis.cols());
  }
  r.checks.push_back(require("action_gauge_invariance_exact", exact));
  r.checks.push_back(gate("action_gauge_invariance", real, "identity", c.tol()));
  r.checks.push_back(gate("trace_gauge_compatibility", trace_gauge, "identity", c.tol()));
  r.checks.push_back(gate("omega_gauge_invariance", omega_gauge, "identity", c.tol()));
  r.checks.push_back(gate("gauge_fix_idempotence", fix_idem, "gauge_fix", c.tol()));
  r.checks.push_back(gate("gauge_fix_orbit_uniqueness", orbit, "gauge_fix", c.tol()));
  r.checks.push_back(gate("large_gauge_holonomy", hol, "holonomy", c.tol()));
  finish(r);
  return r;
}

AxiomResult axiom9(Context& c) {
  AxiomResult r;
  r.id = "A9";
  r.title = "Lagrangian relation modulo gauge";
  const LagrangianReport L = c.T.verify_lagrangian();
  if (L.empty_boundary) {
    r.detail = "empty boundary: the boundary space is zero-dimensional";
    r.checks.push_back(require("empty_boundary", true));
    finish(r);
    return r;
  }
  r.checks.push_back(gate("isotropy_solution_pairs", L.isotropy_max, "isotropy", c.tol()));
  r.checks.push_back(gate("isotropy_image", L.isotropy_image, "isotropy", c.tol()));
  const double angle = L.coisotropy_angles.empty() ? 0.0 : L.coisotropy_angles.front();
  r.checks.push_back(gate("coisotropy_angle", angle, "principal_angle", c.tol()));
  r.checks.push_back(require("half_dimension", L.half_dimension, L.dim_image));
  r.checks.push_back(require("harmonic_block", L.harmonic_block_ok, L.harmonic_block_dim));
  r.detail = "dim image " + std::to_string(L.dim_image) + " of " + std::to_string(L.dim_boundary_space);
  finish(r);
  return r;
}

AxiomResult axiom10(Context& c) {
  AxiomResult r;
  r.id = "A10";
  r.title = "Factorization of gauge actions on hypersurfaces";
  if (!c.has_boundary()) {
    r.detail = "empty boundary";
    r.checks.push_back(require("empty_boundary", true));
    finish(r);
    return r;
  }
  const auto host = c.T.sigma_ptr();
  std::vector<std::shared_ptr<const HypersurfaceMesh>> faces;
  for (const auto& label : host->labels())
    faces.push_back(std::make_shared<HypersurfaceMesh>(extract_face(*host, label)));
  double factor = 0.0, involution = 0.0;
  for (int t = 0; t < c.opt.trials; ++t) {
    const BoundaryDatum a = random_datum(c.rng, host);
    const GaugeTransformation g{c.rng.normal(host->complex().count(0)), {}};
    const BoundaryDatum ga = apply_gauge(a, g);
    for (const auto& face : faces) {
      const GaugeTransformation gf{restrict_vertices(g.f, *host, *face), {}};
      factor = std::max(factor, datum_rel(restrict_datum(ga, face), apply_gauge(restrict_datum(a, face), gf)));
    }
    const BoundaryDatum lhs = reversed(ga);
    const BoundaryDatum rhs = apply_gauge(reversed(a), g);
    involution = std::max(involution, datum_rel(lhs, rhs));
    if (!lhs.host->same_as(*rhs.host)) involution = std::max(involution, 1.0);
  }
  r.checks.push_back(gate("gauge_face_factorization", factor, "factorization", c.tol()));
  r.checks.push_back(gate("gauge_involution", involution, "factorization", c.tol()));
  r.detail = std::to_string(faces.size()) + " labeled faces";
  finish(r);
  return r;
}

void gluing_axioms(const AxiomOptions& opt, AxiomResult& a11, AxiomResult& a12) {
  a11.id = "A11";
  a11.title = "Locality of gauge fields";
  a12.id = "A12";
  a12.title = "Gluing of gauge fields";
  for (const builtin::GluePreset& p : {builtin::two_squares_preset(), builtin::strip_preset(3)}) {
    const GluingReport g = gluing_check(p.mesh, p.face_a, p.face_b, p.matching, opt.tol);
    const std::string tag = p.mesh.name() + ":";
    a11.checks.push_back(require(tag + "equalizer_dimension",
                                 g.dim_equalizer == g.dim_glued_solutions &&
                                     g.dim_pullback == g.dim_glued_solutions,
                                 g.dim_equalizer));
    a11.checks.push_back(gate(tag + "equalizer_angle",
                              std::max(g.angle_equalizer_in_pullback, g.angle_pullback_in_equalizer),
                              "principal_angle", opt.tol));
    a11.checks.push_back(gate(tag + "action_composition", g.action_residual, "identity", opt.tol));
    a12.checks.push_back(require(tag + "boundary_facets", g.facets_consistent));
    a12.checks.push_back(gate(tag + "boundary_data", g.restriction_residual, "identity", opt.tol));
    a12.checks.push_back(require(tag + "harmonic_matches_betti",
                                 g.harmonic_before == g.b1_before && g.harmonic_after == g.b1_after,
                                 g.b1_after));
  }
  a11.detail = a12.detail = "built-in pairs two-squares and strip:N=3";
  finish(a11);
  finish(a12);
}

}  // namespace

AxiomReport verify_axioms(const RegionMesh& M, const AxiomOptions& opt) {
  AxiomReport report;
  report.mesh = M.name();
  report.seed = opt.seed;
  Sampler rng(opt.seed);
  const RegionTheory T(M, opt.tol);
  const Dec action_dec =
      opt.fault ? T.dec().with_star_entry(opt.fault->degree, opt.fault->index, opt.fault->value) : T.dec();
  Context c{M, opt, T, action_dec, rng};

  report.results.push_back(structural(
      "A1", "Affine structure", "solutions form the null space of a linear operator; traces are linear maps"));
  report.results.push_back(structural(
      "A2", "Presymplectic structure", "omega is an antisymmetric bilinear form on boundary data"));
  report.results.push_back(structural(
      "A3", "Symplectic structure", "omega is nondegenerate on the coclosed gauge-fixed boundary data"));
  report.results.push_back(axiom4(c));
  report.results.push_back(axiom5(c));
  report.results.push_back(axiom6(c));
  report.results.push_back(axiom7(c));
  report.results.push_back(axiom8(c));
  report.results.push_back(axiom9(c));
  report.results.push_back(axiom10(c));
  if (opt.include_gluing) {
    AxiomResult a11, a12;
    gluing_axioms(opt, a11, a12);
    report.results.push_back(a11);
    report.results.push_back(a12);
  }
  return report;
}

}  // namespace ymdec
