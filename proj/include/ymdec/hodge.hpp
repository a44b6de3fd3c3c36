#pragma once

#include <Eigen/SparseCholesky>
#include <memory>
#include <string>

#include "ymdec/dec.hpp"
#include "ymdec/homology.hpp"
#include "ymdec/linalg.hpp"

namespace ymdec {

enum class BoundaryCondition { Neumann, Dirichlet, None };
std::string to_string(BoundaryCondition bc);

struct HarmonicBasis {
  int degree = 0;
  BoundaryCondition boundary_condition = BoundaryCondition::Neumann;
  Subspace basis;          // columns orthonormal for the degree-k star
  double max_residual = 0;  // max over columns of (||d a|| + ||d* a||) / ||a||
};

// Closed, coclosed k-cochains with vanishing Neumann trace; dimension b_k.
HarmonicBasis harmonic_neumann_basis(const Dec& dec, int k, double rank_rel = 1e-8);
// Closed k-cochains vanishing on boundary simplices and coclosed in the interior;
// dimension equals the relative Betti number.
HarmonicBasis harmonic_dirichlet_basis(const Dec& dec, int k, double rank_rel = 1e-8);

struct HmfDecomposition {
  Cochain exact_dirichlet;   // d of a (k-1)-cochain vanishing on the boundary
  Cochain coexact_neumann;   // codifferential of a (k+1)-cochain with zero Neumann trace
  Cochain harmonic_neumann;  // in the Neumann harmonic space
  Cochain harmonic_exact;    // remainder
  double residual_norm = 0;  // ||alpha - sum of components||
  double input_norm = 0;
  double max_cross_inner = 0;  // max |<c_i, c_j>| / ||alpha||^2 over i != j
  double condition_estimate = 0;
};

// Precomputes the projectors of the decomposition for one complex and degree.
class HmfDecomposer {
 public:
  HmfDecomposer(const Dec& dec, int k, double rank_rel = 1e-8);
  HmfDecomposition decompose(const Cochain& alpha) const;
  int degree() const { return k_; }
  const Subspace& exact_dirichlet_range() const { return exact_d_; }
  const Subspace& coexact_neumann_range() const { return coexact_n_; }
  const HarmonicBasis& harmonic() const { return harmonic_; }

 private:
  Eigen::VectorXd project_exact_dirichlet(const Eigen::VectorXd& a) const;

  Dec dec_;
  int k_;
  // Dirichlet Poisson step: dense orthonormal range below 500 unknowns, sparse normal equations above.
  bool sparse_poisson_ = false;
  SparseMatrix D_;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
  Subspace exact_d_;
  Subspace coexact_n_;
  HarmonicBasis harmonic_;
  double condition_ = 0;
};

HmfDecomposition hmf_decompose(const Cochain& alpha, const Dec& dec);

struct CoclosedSplit {
  Cochain harmonic;
  Cochain coexact;
};

// Splits a coclosed 1-cochain on a hypersurface into harmonic and coexact parts.
// Throws PreconditionError when the input is not coclosed at `tol` (relative).
CoclosedSplit coclosed_decompose(const Cochain& phi, const Dec& sigma, double tol = 1e-8);

// Relative size of the full weak codifferential: ||S^{-1} d^T S phi|| / ||S^{-1} |d^T| S |phi|||.
double coclosed_residual(const Cochain& phi, const Dec& dec);

}  // namespace ymdec
