#pragma once

#include <map>
#include <string>

#include "ymdec/boundary.hpp"
#include "ymdec/linalg.hpp"
#include "ymdec/mesh.hpp"

namespace ymdec {

// <a.phi, b.phi_dot> on the host, with weights o * w (o the orientation sign).
double bracket(const BoundaryDatum& a, const BoundaryDatum& b);
// (bracket(a, b) - bracket(b, a)) / 2.
double omega(const BoundaryDatum& a, const BoundaryDatum& b);
// omega(a, b) - bracket(a, b)/2 + bracket(b, a)/2 and a cancellation-free scale.
struct IdentityResidual {
  double residual = 0.0;
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
};
IdentityResidual bracket_identity(const BoundaryDatum& a, const BoundaryDatum& b);

struct FaceFactorization {
  double total = 0.0;
  std::map<std::string, double> per_face;
  double face_sum = 0.0;
  double residual = 0.0;
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
};

// bracket on sigma versus the sum of brackets on its labeled faces.
FaceFactorization face_factorization_check(const HypersurfaceMesh& sigma, const BoundaryDatum& a,
                                           const BoundaryDatum& b);

// A linear space with an antisymmetric form, carried as a basis inside an ambient R^m.
struct SymplecticSpace {
  Eigen::MatrixXd omega;  // ambient antisymmetric matrix
  Eigen::VectorXd gram;   // diagonal ambient inner product
  Eigen::MatrixXd basis;  // gram-orthonormal basis of the space
  double scale = 0.0;     // spectral norm of G^{-1/2} Omega G^{-1/2}

  int ambient_dim() const { return static_cast<int>(omega.rows()); }
  int dim() const { return static_cast<int>(basis.cols()); }
  double antisymmetry_defect() const;
  // Numerical rank of the form restricted to the space.
  RankInfo restricted_rank(double rel_tol) const;

  static SymplecticSpace make(Eigen::MatrixXd omega, Eigen::VectorXd gram, const Eigen::MatrixXd& spanning,
                              double rel_tol = 1e-8);
  // R^{2n} with coordinates (e_1..e_n, f_1..f_n) and omega(e_i, f_j) = delta_ij.
  static SymplecticSpace standard(int n);
  // All pairs (phi, phi_dot) on the hypersurface: Omega = [[0, W/2], [-W/2, 0]], W = o diag(w).
  static SymplecticSpace boundary(const HypersurfaceMesh& sigma);
  // Gauge-fixed pairs with both components coclosed.
  static SymplecticSpace gauge_fixed(const HypersurfaceMesh& sigma, double rel_tol = 1e-8);
};

// (phi; phi_dot) stacked.
Eigen::VectorXd datum_vector(const BoundaryDatum& a);

Subspace make_subspace(const SymplecticSpace& W, const Eigen::MatrixXd& spanning, double rel_tol = 1e-8);

// Vectors of W that are omega-orthogonal to V. Throws RankAmbiguityError on an ambiguous rank.
Subspace symplectic_complement(const Subspace& V, const SymplecticSpace& W, double rank_gap = 10.0);

struct LagrangianDiagnostics {
  int dim_v = 0;
  int dim_space = 0;
  int dim_complement = 0;
  double isotropy_residual = 0.0;  // max |V^T Omega V| / scale
  double max_angle = 0.0;          // complement into V
  bool isotropic = false;
  bool coisotropic = false;
  bool lagrangian = false;
};

LagrangianDiagnostics is_isotropic(const Subspace& V, const SymplecticSpace& W, double tol = 1e-11);
LagrangianDiagnostics is_coisotropic(const Subspace& V, const SymplecticSpace& W, double angle_tol = 1e-7,
                                     double rank_gap = 10.0);
LagrangianDiagnostics is_lagrangian(const Subspace& V, const SymplecticSpace& W, double tol = 1e-11,
                                    double angle_tol = 1e-7, double rank_gap = 10.0);

}  // namespace ymdec
