#pragma once

#include <Eigen/QR>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ymdec/boundary.hpp"
#include "ymdec/dec.hpp"
#include "ymdec/linalg.hpp"
#include "ymdec/mesh.hpp"
#include "ymdec/symplectic.hpp"
#include "ymdec/tolerances.hpp"

namespace ymdec {

// Solutions of the discrete Euler-Lagrange equation (d_1^T S_2 d_1 eta = 0 on interior edges).
struct SolutionSpace {
  Subspace basis;              // star_1-orthonormal
  Subspace gauge_fixed_basis;  // solutions with d_0^T S_1 eta = 0 on every vertex
  int gauge_directions = 0;           // rank d_0: exact solutions removed by the gauge fix
  int interior_gauge_directions = 0;  // rank of d_0 on interior vertices
  RankInfo operator_rank;
  double max_residual = 0.0;          // relative Euler-Lagrange residual over basis columns
  double max_gauge_residual = 0.0;    // max ||d_0^T S_1 eta|| / || |d_0^T| S_1 |eta| ||
};

struct LagrangianReport {
  std::string mesh;
  int dim = 0;
  int edges = 0;
  int boundary_edges = 0;
  bool empty_boundary = false;
  int dim_solutions = 0;
  int dim_gauge_fixed = 0;
  int gauge_directions = 0;
  int interior_gauge_directions = 0;
  int dim_boundary_space = 0;  // gauge-fixed boundary data
  int dim_image = 0;
  int dim_complement = 0;
  int harmonic_dim = 0;        // Neumann harmonic fields on M
  int harmonic_block_dim = 0;  // rank of their boundary traces
  // b1(M) - b1(M, dM) + b0(dM) - b0(M) + b0(M, dM): rank of H^1(M) -> H^1(dM) from the exact sequence.
  int harmonic_block_expected = 0;
  int boundary_b1 = 0;
  double solution_residual = 0.0;
  double isotropy_max = 0.0;        // solution-basis pairs, relative
  double isotropy_image = 0.0;      // gauge-fixed image, relative
  double form_nondegeneracy = 0.0;  // smallest/largest singular value of omega on the boundary space
  std::vector<double> coisotropy_angles;
  std::vector<double> complement_singular_values;
  bool isotropic = false;
  bool coisotropic = false;
  bool half_dimension = false;
  bool harmonic_block_ok = false;
  bool lagrangian = false;
};

// Solution space, traces and their boundary symplectic geometry for one region.
class RegionTheory {
 public:
  explicit RegionTheory(const RegionMesh& M, const Tolerances& tol = {});

  const RegionMesh& mesh() const { return trace_.region(); }
  const Dec& dec() const { return trace_.dec(); }
  const BoundaryTrace& trace_map() const { return trace_; }
  std::shared_ptr<const HypersurfaceMesh> sigma_ptr() const { return trace_.sigma_ptr(); }
  const HypersurfaceMesh& sigma() const { return trace_.sigma(); }
  const Tolerances& tolerances() const { return tol_; }
  const SolutionSpace& solutions() const { return space_; }
  const SymplecticSpace& boundary_space() const { return boundary_space_; }
  const CoclosedProjector& projector() const { return projector_; }

  Cochain solution(const Eigen::VectorXd& coefficients) const;
  BoundaryDatum trace(const Cochain& eta, bool check = true) const;
  // Trace with phi projected to the coclosed representative on the boundary.
  BoundaryDatum gauge_fixed_trace(const Cochain& eta, bool check = true) const;

  // Image of the solution space in the gauge-fixed boundary data.
  const Subspace& image() const { return image_; }

  // Minimum-norm solution with the given trace. Throws NotExtendableError.
  Cochain extend(const BoundaryDatum& datum) const;
  double extension_residual(const BoundaryDatum& datum) const;

  LagrangianReport verify_lagrangian() const;

 private:
  struct Extension {
    Eigen::MatrixXd system;
    Eigen::VectorXd row_scale;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  };
  const Extension& extension() const;
  Eigen::VectorXd extension_rhs(const BoundaryDatum& datum) const;

  Tolerances tol_;
  BoundaryTrace trace_;
  SolutionSpace space_;
  CoclosedProjector projector_;
  SymplecticSpace boundary_space_;
  Subspace image_;
  mutable std::shared_ptr<Extension> extension_;
};

SolutionSpace solution_space(const RegionMesh& M, const Tolerances& tol = {});

// <d eta, d eta> with the degree-2 weights of `dec`.
double action(const Cochain& eta, const Dec& dec);
double action(const Cochain& eta, const RegionMesh& M);
// -2 sum over boundary edges of X_e (d_1^T S_2 d_1 eta)_e, weights taken from `dec`.
double theta(const Cochain& eta, const Cochain& X, const Dec& dec);
double theta(const Cochain& eta, const Cochain& X, const RegionMesh& M);

struct ActionIdentity {
  double residual = 0.0;
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
};
// S(eta) - S(eta') + theta(eta, eta - eta')/2 + theta(eta', eta - eta')/2.
ActionIdentity action_identity(const Cochain& eta, const Cochain& eta2, const Dec& dec);

LagrangianReport verify_lagrangian(const RegionMesh& M, const Tolerances& tol = {});

struct GluingReport {
  std::string mesh;
  std::string glued_mesh;
  std::string face_a;
  std::string face_b;
  int dim_solutions = 0;
  int dim_glued_solutions = 0;
  int dim_equalizer = 0;
  int dim_pullback = 0;
  double angle_equalizer_in_pullback = 0.0;
  double angle_pullback_in_equalizer = 0.0;
  double action_residual = 0.0;       // relative
  double restriction_residual = 0.0;  // boundary data of M1 versus M, relative
  int b1_before = 0;
  int b1_after = 0;
  int harmonic_before = 0;
  int harmonic_after = 0;
  bool facets_consistent = false;
  bool equalizer_ok = false;
  bool action_ok = false;
  bool restriction_ok = false;
  bool passed = false;
};

// Solutions on the glued mesh versus solutions on M whose data agree across the matched faces.
GluingReport gluing_check(const RegionMesh& M, const std::string& face_a, const std::string& face_b,
                          const std::map<int, int>& matching, const Tolerances& tol = {});

}  // namespace ymdec
