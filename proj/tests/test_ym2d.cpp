#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "ymdec/dynamics.hpp"
#include "ymdec/errors.hpp"
#include "ymdec/symplectic.hpp"
#include "ymdec/ym2d.hpp"

using namespace ymdec;
using namespace ymdec::testing;

namespace {

std::vector<Eigen::Vector2d> rim(const RegionMesh& M, int first, int count) {
  std::vector<Eigen::Vector2d> p;
  const Eigen::MatrixXd& x = M.geometry().vertex_coords;
  for (int i = first; i < first + count; ++i) p.emplace_back(x(i, 0), x(i, 1));
  return p;
}

}  // namespace

TEST_CASE("curvature constant of constructed cochains") {
  const RegionMesh M = builtin::disk(12);
  const Dec dec(M);
  const RegionTheory T(M);
  const double slope = regular_polygon_perimeter(12) / regular_polygon_area(12);
  const Cochain eta = T.extend(constant_datum(T.sigma_ptr(), {2.0 / slope, 2.0}));
  const CurvatureReport r = curvature_constant(eta, M);
  CHECK(r.c_dot == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.max_deviation <= 1e-10);
  CHECK(r.per_face.size() == 12);

  std::mt19937_64 rng(51);
  const Cochain df = dec.d(dec.cochain(0, integers(rng, dec.count(0))));
  const CurvatureReport z = curvature_constant(df, M);
  CHECK(z.c_dot == 0.0);
  CHECK(z.max_deviation == 0.0);

  CHECK_THROWS_AS(curvature_constant(Dec(builtin::tetrahedron()).zero(1), builtin::tetrahedron()), PreconditionError);
  CHECK_THROWS_AS(curvature_constant(dec.zero(0), M), PreconditionError);
}

TEST_CASE("hexagon line slope matches the shoelace oracle") {
  const RegionMesh H = builtin::from_spec("hexagon");
  const double area = shoelace(rim(H, 1, 6));
  CHECK(area == doctest::Approx(3.0 * std::sqrt(3.0) / 2.0).epsilon(1e-15));
  const LineReport r = lagrangian_line_check(H);
  CHECK(r.passed);
  CHECK(r.line_checked);
  CHECK(r.area == doctest::Approx(area).epsilon(1e-14));
  CHECK(r.perimeter == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(rel(r.measured_slope, 6.0 / area) <= 1e-12);
  CHECK(r.max_residual <= 1e-12);
  CHECK(r.off_line_rejected);
}

TEST_CASE("line residual on disk fans") {
  for (int N : {6, 16, 64}) {
    CAPTURE(N);
    const LineReport r = lagrangian_line_check(builtin::disk(N));
    CHECK(r.passed);
    CHECK(r.max_residual <= 1e-12);
    CHECK(r.slope_error <= 1e-12);
    CHECK(rel(r.slope, regular_polygon_perimeter(N) / regular_polygon_area(N)) <= 1e-13);
  }
  const auto rows = line_sweep({8, 32, 128, 512});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(rows[i].slope - 2.0) < std::abs(rows[i - 1].slope - 2.0));
  CHECK(std::abs(rows.back().slope - 2.0) < 1e-4);
}

TEST_CASE("zero circulation forces zero curvature on a disk") {
  const RegionTheory T(builtin::disk(16));
  CHECK_THROWS_AS(T.extend(constant_datum(T.sigma_ptr(), {0.0, 0.3})), NotExtendableError);
  const Cochain eta = T.extend(constant_datum(T.sigma_ptr(), {0.0, 0.0}));
  CHECK(curvature_constant(eta, T.mesh()).c_dot == 0.0);
}

TEST_CASE("line check on an annulus reports each component") {
  const LineReport r = lagrangian_line_check(builtin::annulus(12));
  CHECK(r.boundary_components == 2);
  CHECK(r.component_lengths.size() == 2);
  CHECK(r.max_residual <= 1e-12);
  CHECK(r.passed);
}

TEST_CASE("reduced form coefficient") {
  const HypersurfaceMesh loop = builtin::loop(40, 2.0 * M_PI);
  const ReducedFormReport r = reduced_form_check(loop);
  CHECK(std::abs(r.omega_unit) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(r.kappa == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.kappa_spread <= 1e-12);
  CHECK(r.kappa_matches_formula);
  CHECK(r.discrepancy_flag);
  CHECK(r.self_pair == 0.0);

  const ReducedFormReport twice = reduced_form_check(builtin::loop(40, 4.0 * M_PI));
  CHECK(twice.omega_unit == doctest::Approx(2.0 * r.omega_unit).epsilon(1e-14));
  CHECK(twice.kappa == doctest::Approx(r.kappa).epsilon(1e-14));
}

TEST_CASE("extendable reduced data are isotropic") {
  const RegionTheory T(builtin::disk(24));
  const double L = total_length(T.sigma()), A = regular_polygon_area(24);
  const BoundaryDatum a = constant_datum(T.sigma_ptr(), {0.7, 0.7 * L / A});
  const BoundaryDatum b = constant_datum(T.sigma_ptr(), {-1.9, -1.9 * L / A});
  CHECK(std::abs(omega(a, b)) <= 1e-13 * std::abs(bracket(a, b)));
}

TEST_CASE("holonomy quotient") {
  const HypersurfaceMesh loop = builtin::loop(20, 2.0 * M_PI);
  CHECK(holonomy_quotient({0.0, 0.4}, loop).angle == 0.0);
  const CylinderPoint one = holonomy_quotient({1.0, 0.4}, loop);
  const CylinderPoint wound = holonomy_quotient({2.0, 0.4}, loop);
  CHECK(circle_distance(one.angle, wound.angle) <= 1e-12);
  CHECK(one.fiber == wound.fiber);
  CHECK(one.fiber == 0.4);
  const CylinderPoint half = holonomy_quotient({1.5, 0.4}, loop);
  CHECK(circle_distance(one.angle, half.angle) == doctest::Approx(M_PI).epsilon(1e-12));

  const HypersurfaceMesh other = builtin::loop(20, 3.0);
  const CylinderPoint p = holonomy_quotient({0.3, -1.0}, other);
  for (int k : {-3, -1, 1, 5}) {
    const CylinderPoint q = holonomy_quotient({0.3 + 2.0 * M_PI * k / 3.0, -1.0}, other);
    CHECK(circle_distance(p.angle, q.angle) <= 1e-12);
  }

  const auto shared = std::make_shared<const HypersurfaceMesh>(other);
  const CylinderPoint read = holonomy_quotient(constant_datum(shared, {0.3, -1.0}));
  CHECK(circle_distance(read.angle, p.angle) <= 1e-12);
  CHECK(read.fiber == doctest::Approx(-1.0).epsilon(1e-14));
}
