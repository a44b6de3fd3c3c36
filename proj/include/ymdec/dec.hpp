#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "ymdec/complex.hpp"
#include "ymdec/linalg.hpp"
#include "ymdec/mesh.hpp"

namespace ymdec {

// Real values on the oriented k-simplices of a complex. `dual` marks values that
// live on the dual cells (output of star).
struct Cochain {
  int degree = 0;
  Eigen::VectorXd values;
  std::shared_ptr<const SimplicialComplex> host;
  bool dual = false;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator*(double s) const;
};

struct AdjointnessCheck {
  double defect = 0.0;
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? std::abs(defect) / scale : std::abs(defect); }
};

// Diagonal-star exterior calculus on one complex.
//
// With S_k the star weights, the codifferential of a k-cochain is
// S_{k-1}^{-1} d_{k-1}^T S_k on interior (k-1)-simplices and zero on boundary ones.
// The leftover (d_{k-1}^T S_k alpha) on boundary simplices is the Neumann trace, and
// <d beta, alpha> = <beta, codifferential alpha> + boundary_pairing(beta, alpha) exactly.
class Dec {
 public:
  Dec(std::shared_ptr<const SimplicialComplex> complex, const Metric& metric);
  explicit Dec(const RegionMesh& M);
  explicit Dec(const HypersurfaceMesh& S);

  int dim() const { return complex_->dim(); }
  int count(int k) const { return complex_->count(k); }
  const SimplicialComplex& complex() const { return *complex_; }
  std::shared_ptr<const SimplicialComplex> complex_ptr() const { return complex_; }

  const SparseMatrix& d_matrix(int k) const;  // C^k -> C^{k+1}
  const Eigen::VectorXd& star_weights(int k) const;
  const std::vector<char>& boundary_mask(int k) const { return complex_->boundary_mask(k); }
  std::vector<int> interior_simplices(int k) const;
  std::vector<int> boundary_simplices(int k) const;

  // d_{k-1}^T S_k : C^k -> C^{k-1} (no division, no boundary split).
  SparseMatrix weak_adjoint(int k) const;
  SparseMatrix codifferential_matrix(int k) const;

  Cochain zero(int k) const;
  Cochain cochain(int k, Eigen::VectorXd values) const;
  Cochain d(const Cochain& a) const;
  Cochain star(const Cochain& a) const;
  Cochain unstar(const Cochain& a) const;
  Cochain codifferential(const Cochain& a) const;
  // Degree k-1 cochain supported on boundary (k-1)-simplices.
  Cochain neumann_trace(const Cochain& a) const;

  double inner_product(const Cochain& a, const Cochain& b) const;
  double norm(const Cochain& a) const;
  double boundary_pairing(const Cochain& beta, const Cochain& alpha) const;
  AdjointnessCheck adjointness(const Cochain& beta, const Cochain& alpha) const;
  double adjointness_defect(const Cochain& f, const Cochain& alpha) const;

  // Copy with one star entry replaced, bypassing positivity. Only for fault-injection tests.
  Dec with_star_entry(int k, int index, double value) const;
  bool stars_positive() const;

 private:
  void check(const Cochain& a, int degree_min, int degree_max, const char* op) const;

  std::shared_ptr<const SimplicialComplex> complex_;
  std::vector<SparseMatrix> d_;
  std::vector<Eigen::VectorXd> star_;
};

}  // namespace ymdec
