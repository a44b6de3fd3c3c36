#include "ymdec/report.hpp"

#include <cmath>
#include <sstream>

namespace ymdec {

namespace {

// Non-finite values serialize as null; keep them readable instead.
Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

Json numbers(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array()) {
    if (j.empty()) os << csv_field(prefix) << ",\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), os);
  } else if (j.is_string()) {
    os << csv_field(prefix) << ',' << csv_field(j.get<std::string>()) << '\n';
  } else {
    os << csv_field(prefix) << ',' << j.dump() << '\n';
  }
}

}  // namespace

Json to_json(const Tolerances& tol) {
  Json j = Json::object();
  for (const auto& e : Tolerances::table()) j[e.name] = tol.*(e.field);
  return j;
}

Json to_json(const RankInfo& info) {
  return {{"rank", info.rank},
          {"sigma_max", number(info.sigma_max)},
          {"threshold", number(info.threshold)},
          {"smallest_retained", number(info.smallest_retained)},
          {"largest_discarded", number(info.largest_discarded)},
          {"gap", number(info.gap())}};
}

Json to_json(const LagrangianReport& r) {
  return {{"mesh", r.mesh},
          {"dim", r.dim},
          {"edges", r.edges},
          {"boundary_edges", r.boundary_edges},
          {"empty_boundary", r.empty_boundary},
          {"dims",
           {{"solutions", r.dim_solutions},
            {"gauge_fixed", r.dim_gauge_fixed},
            {"gauge_directions", r.gauge_directions},
            {"interior_gauge_directions", r.interior_gauge_directions},
            {"boundary_space", r.dim_boundary_space},
            {"image", r.dim_image},
            {"complement", r.dim_complement},
            {"harmonic", r.harmonic_dim},
            {"harmonic_block", r.harmonic_block_dim},
            {"harmonic_block_expected", r.harmonic_block_expected},
            {"boundary_b1", r.boundary_b1}}},
          {"residuals",
           {{"solution", number(r.solution_residual)},
            {"isotropy_max", number(r.isotropy_max)},
            {"isotropy_image", number(r.isotropy_image)},
            {"form_nondegeneracy", number(r.form_nondegeneracy)}}},
          {"coisotropy_angles", numbers(r.coisotropy_angles)},
          {"complement_singular_values", numbers(r.complement_singular_values)},
          {"isotropic", r.isotropic},
          {"coisotropic", r.coisotropic},
          {"half_dimension", r.half_dimension},
          {"harmonic_block_ok", r.harmonic_block_ok},
          {"lagrangian", r.lagrangian}};
}

Json to_json(const GluingReport& r) {
  return {{"mesh", r.mesh},
          {"glued_mesh", r.glued_mesh},
          {"face_a", r.face_a},
          {"face_b", r.face_b},
          {"dims",
           {{"solutions", r.dim_solutions},
            {"glued_solutions", r.dim_glued_solutions},
            {"equalizer", r.dim_equalizer},
            {"pullback", r.dim_pullback}}},
          {"angles",
           {{"equalizer_in_pullback", number(r.angle_equalizer_in_pullback)},
            {"pullback_in_equalizer", number(r.angle_pullback_in_equalizer)}}},
          {"action_residual", number(r.action_residual)},
          {"restriction_residual", number(r.restriction_residual)},
          {"b1_before", r.b1_before},
          {"b1_after", r.b1_after},
          {"harmonic_before", r.harmonic_before},
          {"harmonic_after", r.harmonic_after},
          {"facets_consistent", r.facets_consistent},
          {"equalizer_ok", r.equalizer_ok},
          {"action_ok", r.action_ok},
          {"restriction_ok", r.restriction_ok},
          {"passed", r.passed}};
}

Json to_json(const LineReport& r) {
  return {{"mesh", r.mesh},
          {"area", number(r.area)},
          {"perimeter", number(r.perimeter)},
          {"slope", number(r.slope)},
          {"boundary_components", r.boundary_components},
          {"component_lengths", numbers(r.component_lengths)},
          {"solutions_checked", r.solutions_checked},
          {"max_residual", number(r.max_residual)},
          {"line_checked", r.line_checked},
          {"measured_slope", number(r.measured_slope)},
          {"slope_error", number(r.slope_error)},
          {"on_line_residual", number(r.on_line_residual)},
          {"off_line_residual", number(r.off_line_residual)},
          {"off_line_rejected", r.off_line_rejected},
          {"passed", r.passed}};
}

Json to_json(const ReducedFormReport& r) {
  return {{"length", number(r.length)},
          {"omega_unit", number(r.omega_unit)},
          {"kappa", number(r.kappa)},
          {"kappa_spread", number(r.kappa_spread)},
          {"formula_kappa", r.formula_kappa},
          {"claimed_kappa", r.claimed_kappa},
          {"kappa_matches_formula", r.kappa_matches_formula},
          {"discrepancy_flag", r.discrepancy_flag},
          {"self_pair", number(r.self_pair)},
          {"note", r.note}};
}

Json to_json(const AxiomReport& r) {
  Json axioms = Json::array();
  for (const auto& a : r.results) {
    Json checks = Json::array();
    for (const auto& c : a.checks) {
      Json jc = {{"name", c.name}, {"value", number(c.value)}};
      if (!c.tolerance.empty()) {
        jc["tolerance"] = c.tolerance;
        jc["limit"] = number(c.limit);
      }
      jc["passed"] = c.passed;
      checks.push_back(std::move(jc));
    }
    Json ja = {{"id", a.id}, {"title", a.title}, {"status", a.status}, {"checks", std::move(checks)}};
    if (!a.detail.empty()) ja["detail"] = a.detail;
    axioms.push_back(std::move(ja));
  }
  return {{"mesh", r.mesh}, {"seed", r.seed}, {"all_passed", r.all_passed()}, {"axioms", std::move(axioms)}};
}

Json to_json(const std::vector<LineSweepRow>& rows) {
  Json a = Json::array();
  for (const auto& row : rows)
    a.push_back({{"N", row.N},
                 {"area", number(row.area)},
                 {"perimeter", number(row.perimeter)},
                 {"slope", number(row.slope)},
                 {"residual", number(row.residual)}});
  return a;
}

Json to_json(const BoundaryDatum& d) {
  Json edges = Json::array();
  const auto& amb = d.host->ambient_index(1);
  for (int e : amb) edges.push_back(e);
  return {{"orientation", d.host->orientation_sign()},
          {"edges", std::move(edges)},
          {"phi", numbers(d.phi.values)},
          {"phi_dot", numbers(d.phi_dot.values)}};
}

std::vector<Anchor> anchors_for(const std::string& command) {
  if (command == "decompose")
    return {{"hmf.orthogonal", "Hodge-Morrey-Friedrichs orthogonal decomposition"},
            {"dec.stokes", "discrete Stokes adjointness"}};
  if (command == "harmonic")
    return {{"hmf.harmonic_rank", "harmonic fields have rank given by the Betti number"},
            {"hmf.dirichlet", "harmonic fields null at the boundary represent relative classes"}};
  if (command == "verify-lagrangian")
    return {{"theorem.lagrangian", "extendable boundary data form a Lagrangian subspace"},
            {"A9", "Lagrangian relation modulo gauge"}};
  if (command == "verify-axioms")
    return {{"A1", "Affine structure"},
            {"A2", "Presymplectic structure"},
            {"A3", "Symplectic structure"},
            {"A4", "Symplectic potential"},
            {"A5", "Involution"},
            {"A6", "Disjoint regions"},
            {"A7", "Factorization of fields on hypersurfaces"},
            {"A8", "Gauge action"},
            {"A9", "Lagrangian relation modulo gauge"},
            {"A10", "Factorization of gauge actions on hypersurfaces"},
            {"A11", "Locality of gauge fields"},
            {"A12", "Gluing of gauge fields"}};
  if (command == "glue")
    return {{"A11", "Locality of gauge fields"}, {"A12", "Gluing of gauge fields"}};
  if (command == "ym2d")
    return {{"ym2d.line", "extendable constant data lie on the line c length = c_dot area"},
            {"ym2d.reduced_form", "reduced symplectic structure on the cylinder"},
            {"ym2d.quotient", "holonomy quotient by large gauge transformations"}};
  return {};
}

Json envelope(const std::string& command, const std::string& mesh, std::uint64_t seed,
              const Tolerances& tol, bool passed, Json result) {
  Json anchors = Json::array();
  for (const auto& a : anchors_for(command)) anchors.push_back({{"id", a.id}, {"title", a.title}});
  return {{"schema", kReportSchema}, {"command", command}, {"mesh", mesh},
          {"seed", seed},            {"passed", passed},   {"tolerances", to_json(tol)},
          {"anchors", std::move(anchors)}, {"result", std::move(result)}};
}

std::string to_csv(const Json& report) {
  std::ostringstream os;
  os << "key,value\n";
  flatten(report, "", os);
  return os.str();
}

std::string sweep_csv(const std::vector<LineSweepRow>& rows) {
  std::ostringstream os;
  os << "N,area,perimeter,slope,residual\n";
  for (const auto& r : rows)
    os << r.N << ',' << Json(r.area).dump() << ',' << Json(r.perimeter).dump() << ','
       << Json(r.slope).dump() << ',' << Json(r.residual).dump() << '\n';
  return os.str();
}

}  // namespace ymdec
