#include "ymdec/hodge.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SVD>
#include <cmath>

#include "ymdec/errors.hpp"

namespace ymdec {

namespace {

constexpr int kDenseLimit = 500;

double max_abs(const SparseMatrix& m) {
  double x = 0.0;
  for (int j = 0; j < m.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) x = std::max(x, std::abs(it.value()));
  return x;
}

// Stacks sparse blocks row-wise into a dense matrix, each block scaled to unit max entry.
Eigen::MatrixXd stack_scaled(const std::vector<SparseMatrix>& blocks, int cols) {
  int rows = 0;
  for (const auto& b : blocks) rows += static_cast<int>(b.rows());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  int r = 0;
  for (const auto& b : blocks) {
    const double s = max_abs(b);
    if (b.rows() && s > 0.0) A.middleRows(r, b.rows()) = to_dense(b) / s;
    r += static_cast<int>(b.rows());
  }
  return A;
}

double harmonic_residual(const Dec& dec, int k, const Eigen::VectorXd& a) {
  const Cochain c = dec.cochain(k, a);
  double r = 0.0;
  if (k < dec.dim()) r += dec.norm(dec.d(c));
  if (k >= 1) {
    Eigen::VectorXd w = dec.weak_adjoint(k) * a;
    r += std::sqrt(w.dot(dec.star_weights(k - 1).cwiseInverse().cwiseProduct(w)));
  }
  const double n = dec.norm(c);
  return n > 0.0 ? r / n : r;
}

}  // namespace

std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Neumann: return "neumann";
    case BoundaryCondition::Dirichlet: return "dirichlet";
    default: return "none";
  }
}

HarmonicBasis harmonic_neumann_basis(const Dec& dec, int k, double rank_rel) {
  if (k < 0 || k > dec.dim()) throw PreconditionError("harmonic basis degree out of range");
  std::vector<SparseMatrix> blocks;
  if (k < dec.dim()) blocks.push_back(dec.d_matrix(k));
  if (k >= 1) blocks.push_back(dec.weak_adjoint(k));
  NullSpace ns = null_space(stack_scaled(blocks, dec.count(k)), rank_rel);
  HarmonicBasis h;
  h.degree = k;
  h.boundary_condition = dec.complex().is_closed() ? BoundaryCondition::None : BoundaryCondition::Neumann;
  h.basis = Subspace::span(ns.basis, dec.star_weights(k), rank_rel);
  h.basis.rank_info = ns.info;
  for (int j = 0; j < h.basis.dim(); ++j)
    h.max_residual = std::max(h.max_residual, harmonic_residual(dec, k, h.basis.columns.col(j)));
  return h;
}

HarmonicBasis harmonic_dirichlet_basis(const Dec& dec, int k, double rank_rel) {
  if (k < 0 || k > dec.dim()) throw PreconditionError("harmonic basis degree out of range");
  const auto interior = dec.interior_simplices(k);
  SparseMatrix P = SparseMatrix(selector(interior, dec.count(k)).transpose());
  std::vector<SparseMatrix> blocks;
  if (k < dec.dim()) blocks.push_back(dec.d_matrix(k) * P);
  if (k >= 1) {
    SparseMatrix rows = selector(dec.interior_simplices(k - 1), dec.count(k - 1));
    blocks.push_back(rows * dec.weak_adjoint(k) * P);
  }
  NullSpace ns = null_space(stack_scaled(blocks, static_cast<int>(interior.size())), rank_rel);
  HarmonicBasis h;
  h.degree = k;
  h.boundary_condition = BoundaryCondition::Dirichlet;
  h.basis = Subspace::span(P * ns.basis, dec.star_weights(k), rank_rel);
  h.basis.rank_info = ns.info;
  for (int j = 0; j < h.basis.dim(); ++j) {
    const Eigen::VectorXd a = h.basis.columns.col(j);
    const Cochain c = dec.cochain(k, a);
    double r = k < dec.dim() ? dec.norm(dec.d(c)) : 0.0;
    if (k >= 1) r += dec.norm(dec.codifferential(c));
    h.max_residual = std::max(h.max_residual, r / dec.norm(c));
  }
  return h;
}

HmfDecomposer::HmfDecomposer(const Dec& dec, int k, double rank_rel) : dec_(dec), k_(k) {
  if (k < 0 || k > dec.dim()) throw PreconditionError("decomposition degree out of range");
  const Eigen::VectorXd& S = dec.star_weights(k);

  if (k >= 1) {
    const auto interior = dec.interior_simplices(k - 1);
    D_ = dec.d_matrix(k - 1) * SparseMatrix(selector(interior, dec.count(k - 1)).transpose());
    if (static_cast<int>(interior.size()) < kDenseLimit) {
      exact_d_ = Subspace::span(to_dense(D_), S, rank_rel);
      const auto& sv = exact_d_.rank_info;
      condition_ = sv.rank ? sv.sigma_max / sv.smallest_retained : 0.0;
    } else {
      sparse_poisson_ = true;
      SparseMatrix normal = D_.transpose() * diagonal(S) * D_;
      ldlt_.compute(normal);
      if (ldlt_.info() != Eigen::Success) throw NumericalError("Dirichlet Poisson factorization failed");
      const Eigen::VectorXd diag = ldlt_.vectorD();
      condition_ = diag.cwiseAbs().maxCoeff() / std::max(diag.cwiseAbs().minCoeff(), 1e-300);
    }
  }
  if (!sparse_poisson_) exact_d_.gram = S;
  if (exact_d_.columns.rows() != S.size()) exact_d_.columns.resize(S.size(), 0);

  if (k < dec.dim()) {
    // (k+1)-cochains with zero Neumann trace, then their codifferentials.
    SparseMatrix C = selector(dec.boundary_simplices(k), dec.count(k)) * dec.weak_adjoint(k + 1);
    NullSpace ns = null_space(to_dense(C), rank_rel);
    const Eigen::MatrixXd op = S.cwiseInverse().asDiagonal() * to_dense(dec.weak_adjoint(k + 1));
    const Eigen::MatrixXd B = op * ns.basis;
    // B can be pure roundoff (e.g. no interior simplices); measure it against the operator.
    const Eigen::VectorXd root = S.cwiseSqrt();
    bool nonzero = false;
    if (B.cols() > 0 && B.rows() > 0) {
      const double op_norm = Eigen::JacobiSVD<Eigen::MatrixXd>(root.asDiagonal() * op).singularValues()(0);
      const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(root.asDiagonal() * B).singularValues();
      nonzero = sv(0) > rank_rel * op_norm;
    }
    if (nonzero) {
      coexact_n_ = Subspace::span(B, S, rank_rel);
    } else {
      coexact_n_.columns.resize(S.size(), 0);
      coexact_n_.gram = S;
    }
  } else {
    coexact_n_.columns.resize(S.size(), 0);
    coexact_n_.gram = S;
  }
  harmonic_ = harmonic_neumann_basis(dec, k, rank_rel);
}

Eigen::VectorXd HmfDecomposer::project_exact_dirichlet(const Eigen::VectorXd& a) const {
  const Eigen::VectorXd& S = dec_.star_weights(k_);
  if (k_ == 0) return Eigen::VectorXd::Zero(a.size());
  if (!sparse_poisson_) return exact_d_.columns * (exact_d_.columns.transpose() * S.cwiseProduct(a));
  const Eigen::VectorXd rhs = D_.transpose() * S.cwiseProduct(a);
  Eigen::VectorXd beta = ldlt_.solve(rhs);
  SparseMatrix normal = D_.transpose() * diagonal(S) * D_;
  if ((normal * beta - rhs).norm() > 1e-10 * std::max(rhs.norm(), 1e-300)) {
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg(normal);
    cg.setTolerance(1e-14);
    beta = cg.solve(rhs);
    if ((normal * beta - rhs).norm() > 1e-10 * std::max(rhs.norm(), 1e-300))
      throw NumericalError("Dirichlet Poisson solve did not converge");
  }
  return D_ * beta;
}

HmfDecomposition HmfDecomposer::decompose(const Cochain& alpha) const {
  if (alpha.host != dec_.complex_ptr() || alpha.degree != k_ || alpha.dual)
    throw PreconditionError("hmf_decompose: cochain does not match the decomposer");
  const Eigen::VectorXd& S = dec_.star_weights(k_);
  auto project = [&S](const Subspace& Q, const Eigen::VectorXd& v) -> Eigen::VectorXd {
    if (Q.dim() == 0) return Eigen::VectorXd::Zero(v.size());
    return Q.columns * (Q.columns.transpose() * S.cwiseProduct(v));
  };
  Eigen::VectorXd rest = alpha.values;
  const Eigen::VectorXd ed = project_exact_dirichlet(rest);
  rest -= ed;
  const Eigen::VectorXd cn = project(coexact_n_, rest);
  rest -= cn;
  const Eigen::VectorXd hn = project(harmonic_.basis, rest);
  rest -= hn;

  HmfDecomposition out;
  out.exact_dirichlet = dec_.cochain(k_, ed);
  out.coexact_neumann = dec_.cochain(k_, cn);
  out.harmonic_neumann = dec_.cochain(k_, hn);
  out.harmonic_exact = dec_.cochain(k_, rest);
  const Eigen::VectorXd sum = ed + cn + hn + rest;
  const Eigen::VectorXd diff = alpha.values - sum;
  out.residual_norm = std::sqrt(diff.dot(S.cwiseProduct(diff)));
  out.input_norm = std::sqrt(alpha.values.dot(S.cwiseProduct(alpha.values)));
  const Eigen::VectorXd* parts[4] = {&ed, &cn, &hn, &rest};
  const double denom = out.input_norm > 0.0 ? out.input_norm * out.input_norm : 1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      out.max_cross_inner = std::max(out.max_cross_inner, std::abs(parts[i]->dot(S.cwiseProduct(*parts[j]))) / denom);
  out.condition_estimate = condition_;
  return out;
}

HmfDecomposition hmf_decompose(const Cochain& alpha, const Dec& dec) {
  return HmfDecomposer(dec, alpha.degree).decompose(alpha);
}

double coclosed_residual(const Cochain& phi, const Dec& dec) {
  const SparseMatrix W = dec.weak_adjoint(phi.degree);
  const Eigen::VectorXd inv = dec.star_weights(phi.degree - 1).cwiseInverse();
  const Eigen::VectorXd r = inv.cwiseProduct(W * phi.values);
  const Eigen::VectorXd s = inv.cwiseProduct(W.cwiseAbs() * phi.values.cwiseAbs());
  const double scale = s.norm();
  return scale > 0.0 ? r.norm() / scale : r.norm();
}

CoclosedSplit coclosed_decompose(const Cochain& phi, const Dec& sigma, double tol) {
  if (phi.host != sigma.complex_ptr() || phi.degree != 1)
    throw PreconditionError("coclosed_decompose expects a 1-cochain on the hypersurface");
  if (coclosed_residual(phi, sigma) > tol)
    throw PreconditionError("coclosed_decompose: input is not coclosed");
  const HarmonicBasis h = harmonic_neumann_basis(sigma, 1);
  const Eigen::VectorXd& S = sigma.star_weights(1);
  Eigen::VectorXd harm = Eigen::VectorXd::Zero(phi.values.size());
  if (h.basis.dim()) harm = h.basis.columns * (h.basis.columns.transpose() * S.cwiseProduct(phi.values));
  return {sigma.cochain(1, harm), sigma.cochain(1, phi.values - harm)};
}

}  // namespace ymdec
