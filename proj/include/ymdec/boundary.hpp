#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ymdec/dec.hpp"
#include "ymdec/homology.hpp"
#include "ymdec/mesh.hpp"
#include "ymdec/tolerances.hpp"

namespace ymdec {

// Reduced boundary data of a solution: tangential trace phi and the normal-derivative
// trace phi_dot, both 1-cochains on the host hypersurface.
struct BoundaryDatum {
  Cochain phi;
  Cochain phi_dot;
  std::shared_ptr<const HypersurfaceMesh> host;
};

BoundaryDatum make_datum(std::shared_ptr<const HypersurfaceMesh> host, Eigen::VectorXd phi,
                         Eigen::VectorXd phi_dot);
// Same values on the orientation-reversed hypersurface.
BoundaryDatum reversed(const BoundaryDatum& a);
// Restriction of a datum to the edges of a sub-hypersurface (e.g. a face).
BoundaryDatum restrict_datum(const BoundaryDatum& a, std::shared_ptr<const HypersurfaceMesh> part);

// Linear maps from bulk 1-cochains on M to boundary data on dM.
//
// flux_e = (d_1^T S_2 d_1 eta)_e on boundary edges; it is the boundary pairing of d eta,
// so sum_e X_e flux_e = <dX, d eta> - <X, codifferential d eta>. phi_dot = flux / (o w)
// with w the boundary edge weights and o the orientation sign, so that
// bracket(X, eta) = sum_e X_e flux_e.
class BoundaryTrace {
 public:
  explicit BoundaryTrace(const RegionMesh& M);

  const RegionMesh& region() const { return region_; }
  const Dec& dec() const { return dec_; }
  std::shared_ptr<const HypersurfaceMesh> sigma_ptr() const { return sigma_; }
  const HypersurfaceMesh& sigma() const { return *sigma_; }
  const Dec& sigma_dec() const { return sigma_dec_; }

  const SparseMatrix& phi_map() const { return phi_map_; }
  const SparseMatrix& flux_map() const { return flux_map_; }
  const SparseMatrix& phi_dot_map() const { return phi_dot_map_; }
  // Rows: interior edges; (d_1^T S_2 d_1 eta) there.
  const SparseMatrix& euler_lagrange() const { return el_; }
  const std::vector<int>& interior_edges() const { return interior_edges_; }

  // ||EL eta|| / || |EL| |eta| ||.
  double euler_lagrange_residual(const Cochain& eta) const;

  // Throws PreconditionError when check is set and eta is not a solution at `tol`.
  BoundaryDatum trace(const Cochain& eta, bool check = true, double tol = 1e-9) const;
  BoundaryDatum trace_face(const Cochain& eta, const std::string& label, bool check = true,
                           double tol = 1e-9) const;

 private:
  RegionMesh region_;
  Dec dec_;
  std::shared_ptr<const HypersurfaceMesh> sigma_;
  Dec sigma_dec_;
  SparseMatrix phi_map_, flux_map_, phi_dot_map_, el_;
  std::vector<int> interior_edges_;
};

// S-orthogonal projection onto ker(d_0^T S_1) on a hypersurface: phi -> phi + d f with
// Laplace f = -d* phi, f mean zero per connected component.
class CoclosedProjector {
 public:
  explicit CoclosedProjector(const Dec& sigma);
  Eigen::VectorXd apply(const Eigen::VectorXd& phi) const;
  // The potential f (mean zero per component) with phi + d f coclosed.
  Eigen::VectorXd potential(const Eigen::VectorXd& phi) const;
  const Eigen::MatrixXd& matrix() const { return P_; }

 private:
  Dec dec_;
  Eigen::MatrixXd solve_;  // phi -> f
  Eigen::MatrixXd P_;
};

BoundaryDatum gauge_fix_coclosed(const BoundaryDatum& datum);
BoundaryDatum gauge_fix_coclosed(const BoundaryDatum& datum, const CoclosedProjector& proj);

struct HolonomyValue {
  double integral = 0.0;
  double circle = 0.0;  // integral mod 2 pi, in [0, 2 pi)
};

// Signed sum of phi over the cycle. Throws PreconditionError when gamma is not a cycle.
HolonomyValue holonomy(const Cochain& phi, const Cycle& gamma);
double wrap_angle(double x);
// Distance on the circle between two angles.
double circle_distance(double a, double b);

// Harmonic 1-cochains with period 2 pi * delta_ij on the homology generators.
struct PeriodBasis {
  std::vector<Cycle> generators;
  Eigen::MatrixXd basis;  // one column per generator
  Eigen::MatrixXd periods;  // generators x columns, equals 2 pi I
};

PeriodBasis integer_period_basis(const Dec& sigma);

struct GaugeTransformation {
  Eigen::VectorXd f;              // 0-cochain on the host
  std::vector<long long> winding;  // empty for the identity component
};

// phi -> phi + d f + sum_i winding_i * basis_i; phi_dot unchanged.
BoundaryDatum apply_gauge(const BoundaryDatum& datum, const GaugeTransformation& g,
                          const PeriodBasis* periods = nullptr);
// Large gauge shift: every generator holonomy moves by 2 pi * winding_i.
BoundaryDatum large_gauge_orbit(const BoundaryDatum& datum, const std::vector<long long>& winding,
                                const PeriodBasis& periods);

}  // namespace ymdec
