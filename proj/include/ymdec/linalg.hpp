#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <limits>
#include <vector>

namespace ymdec {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Singular values around a numerical rank decision.
struct RankInfo {
  int rank = 0;
  double sigma_max = 0.0;
  double threshold = 0.0;
  double smallest_retained = 0.0;
  double largest_discarded = 0.0;
  std::vector<double> singular_values;

  // Ratio smallest_retained / largest_discarded; infinite when nothing nonzero was discarded.
  double gap() const;
  bool ambiguous(double min_gap) const;
};

RankInfo rank_from_singular_values(const Eigen::VectorXd& sv, double rel_tol);

struct NullSpace {
  Eigen::MatrixXd basis;  // euclidean-orthonormal columns
  RankInfo info;
};

// Null space of A (cols x dim) at threshold rel_tol * sigma_max.
NullSpace null_space(const Eigen::MatrixXd& A, double rel_tol);

struct Range {
  Eigen::MatrixXd basis;
  RankInfo info;
};

// Basis of span(A), orthonormal for the diagonal inner product gram.
Range gram_orthonormal_range(const Eigen::MatrixXd& A, const Eigen::VectorXd& gram, double rel_tol);

// Angles of each direction of A (gram-orthonormal) to span(B) (gram-orthonormal).
// Computed from sines, so small angles are resolved to roundoff.
Eigen::VectorXd containment_angles(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                   const Eigen::VectorXd& gram);

double max_or_zero(const Eigen::VectorXd& v);

Eigen::MatrixXd to_dense(const SparseMatrix& m);

// Rows of the identity selecting the given indices: result is (idx.size() x n).
SparseMatrix selector(const std::vector<int>& idx, int n);

// Diagonal sparse matrix.
SparseMatrix diagonal(const Eigen::VectorXd& d);

// Subspace of R^m with gram-orthonormal columns for a diagonal inner product.
struct Subspace {
  Eigen::MatrixXd columns;
  Eigen::VectorXd gram;
  double rank_tolerance = 1e-8;
  RankInfo rank_info;

  int dim() const { return static_cast<int>(columns.cols()); }
  int ambient_dim() const { return static_cast<int>(columns.rows()); }
  // max |C^T G C - I|
  double orthonormality_defect() const;
  // Orthonormalized span of the columns of A.
  static Subspace span(const Eigen::MatrixXd& A, const Eigen::VectorXd& gram, double rel_tol);
};

// Max angle of A's directions to B (0 when A is empty).
double max_containment_angle(const Subspace& A, const Subspace& B);

// Throws RankAmbiguityError when info is ambiguous at min_gap; context names the operation.
void require_unambiguous(const RankInfo& info, double min_gap, const char* context);

}  // namespace ymdec
