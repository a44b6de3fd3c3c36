#include "ymdec/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "ymdec/errors.hpp"

namespace ymdec {

double RankInfo::gap() const {
  if (largest_discarded <= 0.0) return std::numeric_limits<double>::infinity();
  if (rank == 0) return 0.0;
  return smallest_retained / largest_discarded;
}

bool RankInfo::ambiguous(double min_gap) const { return rank > 0 && gap() < min_gap; }

RankInfo rank_from_singular_values(const Eigen::VectorXd& sv, double rel_tol) {
  RankInfo info;
  info.singular_values.assign(sv.data(), sv.data() + sv.size());
  std::sort(info.singular_values.begin(), info.singular_values.end(), std::greater<>());
  info.sigma_max = info.singular_values.empty() ? 0.0 : info.singular_values.front();
  info.threshold = rel_tol * info.sigma_max;
  for (double s : info.singular_values) {
    if (info.sigma_max > 0.0 && s > info.threshold) {
      ++info.rank;
      info.smallest_retained = s;
    } else {
      info.largest_discarded = std::max(info.largest_discarded, s);
    }
  }
  return info;
}

NullSpace null_space(const Eigen::MatrixXd& A, double rel_tol) {
  const Eigen::Index n = A.cols();
  NullSpace out;
  if (A.rows() == 0 || n == 0) {
    out.basis = Eigen::MatrixXd::Identity(n, n);
    return out;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  out.info = rank_from_singular_values(svd.singularValues(), rel_tol);
  out.basis = svd.matrixV().rightCols(n - out.info.rank);
  return out;
}

Range gram_orthonormal_range(const Eigen::MatrixXd& A, const Eigen::VectorXd& gram,
                             double rel_tol) {
  Range out;
  const Eigen::Index m = A.rows();
  if (A.cols() == 0 || m == 0) {
    out.basis.resize(m, 0);
    return out;
  }
  Eigen::VectorXd root = gram.cwiseAbs().cwiseSqrt();
  Eigen::MatrixXd scaled = root.asDiagonal() * A;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU);
  out.info = rank_from_singular_values(svd.singularValues(), rel_tol);
  out.basis = root.cwiseInverse().asDiagonal() * svd.matrixU().leftCols(out.info.rank);
  return out;
}

Eigen::VectorXd containment_angles(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                   const Eigen::VectorXd& gram) {
  const Eigen::Index k = A.cols();
  if (k == 0) return Eigen::VectorXd(0);
  Eigen::VectorXd root = gram.cwiseAbs().cwiseSqrt();
  Eigen::MatrixXd residual = A;
  if (B.cols() > 0) residual -= B * (B.transpose() * gram.cwiseAbs().asDiagonal() * A);
  Eigen::MatrixXd scaled = root.asDiagonal() * residual;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled);
  Eigen::VectorXd sines = Eigen::VectorXd::Zero(k);
  const Eigen::VectorXd& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i) sines(i) = sv(i);
  Eigen::VectorXd angles(k);
  for (Eigen::Index i = 0; i < k; ++i) angles(i) = std::asin(std::min(1.0, sines(i)));
  std::sort(angles.data(), angles.data() + k, std::greater<>());
  return angles;
}

double max_or_zero(const Eigen::VectorXd& v) { return v.size() ? v.maxCoeff() : 0.0; }

Eigen::MatrixXd to_dense(const SparseMatrix& m) { return Eigen::MatrixXd(m); }

SparseMatrix selector(const std::vector<int>& idx, int n) {
  SparseMatrix s(static_cast<Eigen::Index>(idx.size()), n);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) t.emplace_back(static_cast<int>(r), idx[r], 1.0);
  s.setFromTriplets(t.begin(), t.end());
  return s;
}

SparseMatrix diagonal(const Eigen::VectorXd& d) {
  SparseMatrix s(d.size(), d.size());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) t.emplace_back(i, i, d(i));
  s.setFromTriplets(t.begin(), t.end());
  return s;
}

double Subspace::orthonormality_defect() const {
  if (dim() == 0) return 0.0;
  Eigen::MatrixXd g = columns.transpose() * gram.asDiagonal() * columns;
  return (g - Eigen::MatrixXd::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

Subspace Subspace::span(const Eigen::MatrixXd& A, const Eigen::VectorXd& gram, double rel_tol) {
  Range r = gram_orthonormal_range(A, gram, rel_tol);
  Subspace s;
  s.columns = std::move(r.basis);
  if (s.columns.rows() != gram.size()) s.columns.resize(gram.size(), s.columns.cols());
  s.gram = gram;
  s.rank_tolerance = rel_tol;
  s.rank_info = std::move(r.info);
  return s;
}

double max_containment_angle(const Subspace& A, const Subspace& B) {
  return max_or_zero(containment_angles(A.columns, B.columns, A.gram));
}

void require_unambiguous(const RankInfo& info, double min_gap, const char* context) {
  if (!info.ambiguous(min_gap)) return;
  std::ostringstream os;
  os << context << ": ambiguous numerical rank " << info.rank << " (smallest retained "
     << info.smallest_retained << ", largest discarded " << info.largest_discarded << ", gap "
     << info.gap() << ")";
  throw RankAmbiguityError(os.str());
}

}  // namespace ymdec
