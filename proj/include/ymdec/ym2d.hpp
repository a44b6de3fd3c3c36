#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ymdec/boundary.hpp"
#include "ymdec/dec.hpp"
#include "ymdec/mesh.hpp"
#include "ymdec/tolerances.hpp"

namespace ymdec {

// Constant boundary datum (c ds, c_dot ds) on a loop.
struct Reduced2dDatum {
  double c = 0.0;
  double c_dot = 0.0;
};

struct CurvatureReport {
  double c_dot = 0.0;          // area-weighted mean of (d eta)_t / area_t
  double max_deviation = 0.0;  // max |ratio_t - c_dot|
  double relative_deviation = 0.0;
  std::vector<double> per_face;
};

// Throws PreconditionError unless M is 2D and eta a 1-cochain on it.
CurvatureReport curvature_constant(const Cochain& eta, const RegionMesh& M);

// phi_e = c len_e, phi_dot_e = c_dot len_e on every edge of the hypersurface.
BoundaryDatum constant_datum(std::shared_ptr<const HypersurfaceMesh> loop, const Reduced2dDatum& d);
double total_length(const HypersurfaceMesh& loop);

struct LineReport {
  std::string mesh;
  double area = 0.0;
  double perimeter = 0.0;
  double slope = 0.0;  // perimeter / area
  int boundary_components = 0;
  std::vector<double> component_lengths;
  int solutions_checked = 0;
  double max_residual = 0.0;  // |circulation - c_dot area| / scale over gauge-fixed solutions
  // Constant datum with c = 1: extension on the line and rejection off it.
  bool line_checked = false;
  double measured_slope = 0.0;  // c_dot / c of the extended solution
  double slope_error = 0.0;     // relative
  double on_line_residual = 0.0;
  double off_line_residual = 0.0;
  bool off_line_rejected = false;
  bool passed = false;
};

LineReport lagrangian_line_check(const RegionMesh& M, const Tolerances& tol = {});

struct ReducedFormReport {
  double length = 0.0;
  double omega_unit = 0.0;  // omega((1, 0), (0, 1))
  double kappa = 0.0;       // omega = kappa * length * (c c_dot' - c' c_dot)
  double kappa_spread = 0.0;  // max deviation of kappa over sample pairs
  double formula_kappa = 0.5;
  double claimed_kappa = 1.0;
  bool kappa_matches_formula = false;
  bool discrepancy_flag = false;  // measured kappa differs from the claimed factor of 1
  double self_pair = 0.0;
  std::string note;
};

ReducedFormReport reduced_form_check(const HypersurfaceMesh& loop, const Tolerances& tol = {});

// Circle coordinate c L mod 2 pi and fiber coordinate c_dot.
struct CylinderPoint {
  double angle = 0.0;
  double fiber = 0.0;
};

CylinderPoint holonomy_quotient(const Reduced2dDatum& d, const HypersurfaceMesh& loop);
// Same point read off a boundary datum on a loop: total circulation and mean phi_dot per length.
CylinderPoint holonomy_quotient(const BoundaryDatum& d);

struct LineSweepRow {
  int N = 0;
  double area = 0.0;
  double perimeter = 0.0;
  double slope = 0.0;
  double residual = 0.0;
};

// lagrangian_line_check over disk fans with the given polygon counts.
std::vector<LineSweepRow> line_sweep(const std::vector<int>& Ns, const Tolerances& tol = {});

}  // namespace ymdec
