#include "ymdec/symplectic.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <set>

#include "ymdec/errors.hpp"

namespace ymdec {

namespace {

void same_host(const BoundaryDatum& a, const BoundaryDatum& b) {
  if (!a.host || !b.host || !a.host->same_as(*b.host))
    throw PreconditionError("boundary data live on different hypersurfaces");
}

}  // namespace

double bracket(const BoundaryDatum& a, const BoundaryDatum& b) {
  same_host(a, b);
  const Eigen::VectorXd& w = a.host->edge_weights();
  return a.host->orientation_sign() * a.phi.values.dot(w.cwiseProduct(b.phi_dot.values));
}

double omega(const BoundaryDatum& a, const BoundaryDatum& b) {
  return 0.5 * (bracket(a, b) - bracket(b, a));
}

IdentityResidual bracket_identity(const BoundaryDatum& a, const BoundaryDatum& b) {
  const Eigen::VectorXd& w = a.host->edge_weights();
  IdentityResidual r;
  r.residual = omega(a, b) - 0.5 * bracket(a, b) + 0.5 * bracket(b, a);
  r.scale = a.phi.values.cwiseAbs().dot(w.cwiseProduct(b.phi_dot.values.cwiseAbs())) +
            b.phi.values.cwiseAbs().dot(w.cwiseProduct(a.phi_dot.values.cwiseAbs()));
  return r;
}

FaceFactorization face_factorization_check(const HypersurfaceMesh& sigma, const BoundaryDatum& a,
                                           const BoundaryDatum& b) {
  same_host(a, b);
  if (!a.host->same_as(sigma)) throw PreconditionError("data do not live on the given hypersurface");
  FaceFactorization out;
  out.total = bracket(a, b);
  std::set<int> covered;
  for (const auto& label : sigma.labels()) {
    auto face = std::make_shared<HypersurfaceMesh>(extract_face(sigma, label));
    const BoundaryDatum fa = restrict_datum(a, face);
    const BoundaryDatum fb = restrict_datum(b, face);
    const double v = bracket(fa, fb);
    out.per_face[label] = v;
    out.face_sum += v;
    const Eigen::VectorXd& w = face->edge_weights();
    out.scale += fa.phi.values.cwiseAbs().dot(w.cwiseProduct(fb.phi_dot.values.cwiseAbs()));
    for (int e : face->ambient_index(1)) covered.insert(e);
  }
  if (static_cast<int>(covered.size()) != sigma.complex().count(1))
    throw PreconditionError("face labels do not cover the hypersurface");
  out.residual = out.total - out.face_sum;
  return out;
}

double SymplecticSpace::antisymmetry_defect() const {
  if (omega.size() == 0) return 0.0;
  return (omega + omega.transpose()).cwiseAbs().maxCoeff();
}

RankInfo SymplecticSpace::restricted_rank(double rel_tol) const {
  if (dim() == 0) return {};
  Eigen::MatrixXd r = basis.transpose() * omega * basis;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(r);
  return rank_from_singular_values(svd.singularValues(), rel_tol);
}

SymplecticSpace SymplecticSpace::make(Eigen::MatrixXd omega, Eigen::VectorXd gram,
                                      const Eigen::MatrixXd& spanning, double rel_tol) {
  SymplecticSpace W;
  W.omega = std::move(omega);
  W.gram = std::move(gram);
  W.basis = gram_orthonormal_range(spanning, W.gram, rel_tol).basis;
  if (W.basis.rows() != W.gram.size()) W.basis.resize(W.gram.size(), 0);
  if (W.omega.size()) {
    Eigen::VectorXd r = W.gram.cwiseAbs().cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd n = r.asDiagonal() * W.omega * r.asDiagonal();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(n);
    W.scale = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  }
  return W;
}

SymplecticSpace SymplecticSpace::standard(int n) {
  Eigen::MatrixXd om = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  om.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  om.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return make(om, Eigen::VectorXd::Ones(2 * n), Eigen::MatrixXd::Identity(2 * n, 2 * n));
}

namespace {

Eigen::MatrixXd boundary_omega(const HypersurfaceMesh& sigma) {
  const Eigen::VectorXd w = sigma.edge_weights() * sigma.orientation_sign();
  const Eigen::Index m = w.size();
  Eigen::MatrixXd om = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  om.topRightCorner(m, m) = 0.5 * Eigen::MatrixXd(w.asDiagonal());
  om.bottomLeftCorner(m, m) = -0.5 * Eigen::MatrixXd(w.asDiagonal());
  return om;
}

Eigen::VectorXd boundary_gram(const HypersurfaceMesh& sigma) {
  const Eigen::VectorXd w = sigma.edge_weights().cwiseAbs();
  Eigen::VectorXd g(2 * w.size());
  g << w, w;
  return g;
}

}  // namespace

SymplecticSpace SymplecticSpace::boundary(const HypersurfaceMesh& sigma) {
  const int m = sigma.complex().count(1);
  return make(boundary_omega(sigma), boundary_gram(sigma), Eigen::MatrixXd::Identity(2 * m, 2 * m));
}

SymplecticSpace SymplecticSpace::gauge_fixed(const HypersurfaceMesh& sigma, double rel_tol) {
  const int m = sigma.complex().count(1);
  Eigen::MatrixXd K;
  if (sigma.complex().count(0) == 0) {
    K = Eigen::MatrixXd::Identity(m, m);
  } else {
    const Dec dec(sigma);
    K = null_space(to_dense(dec.weak_adjoint(1)), rel_tol).basis;
  }
  Eigen::MatrixXd span = Eigen::MatrixXd::Zero(2 * m, 2 * K.cols());
  span.topLeftCorner(m, K.cols()) = K;
  span.bottomRightCorner(m, K.cols()) = K;
  return make(boundary_omega(sigma), boundary_gram(sigma), span, rel_tol);
}

Eigen::VectorXd datum_vector(const BoundaryDatum& a) {
  Eigen::VectorXd v(2 * a.phi.values.size());
  v << a.phi.values, a.phi_dot.values;
  return v;
}

Subspace make_subspace(const SymplecticSpace& W, const Eigen::MatrixXd& spanning, double rel_tol) {
  if (spanning.rows() != W.ambient_dim()) throw PreconditionError("subspace ambient dimension mismatch");
  return Subspace::span(spanning, W.gram, rel_tol);
}

Subspace symplectic_complement(const Subspace& V, const SymplecticSpace& W, double rank_gap) {
  if (V.ambient_dim() != W.ambient_dim()) throw PreconditionError("subspace ambient dimension mismatch");
  const Eigen::MatrixXd M = V.columns.transpose() * W.omega * W.basis;
  NullSpace ns = null_space(M, V.rank_tolerance);
  require_unambiguous(ns.info, rank_gap, "symplectic_complement");
  Subspace out;
  out.columns = W.basis * ns.basis;
  out.gram = W.gram;
  out.rank_tolerance = V.rank_tolerance;
  out.rank_info = ns.info;
  return out;
}

LagrangianDiagnostics is_isotropic(const Subspace& V, const SymplecticSpace& W, double tol) {
  LagrangianDiagnostics d;
  d.dim_v = V.dim();
  d.dim_space = W.dim();
  if (V.dim() > 0) {
    const double m = (V.columns.transpose() * W.omega * V.columns).cwiseAbs().maxCoeff();
    d.isotropy_residual = W.scale > 0.0 ? m / W.scale : m;
  }
  d.isotropic = d.isotropy_residual <= tol;
  return d;
}

LagrangianDiagnostics is_coisotropic(const Subspace& V, const SymplecticSpace& W, double angle_tol,
                                     double rank_gap) {
  LagrangianDiagnostics d;
  d.dim_v = V.dim();
  d.dim_space = W.dim();
  const Subspace C = symplectic_complement(V, W, rank_gap);
  d.dim_complement = C.dim();
  d.max_angle = max_containment_angle(C, V);
  d.coisotropic = d.max_angle <= angle_tol;
  return d;
}

LagrangianDiagnostics is_lagrangian(const Subspace& V, const SymplecticSpace& W, double tol,
                                    double angle_tol, double rank_gap) {
  LagrangianDiagnostics iso = is_isotropic(V, W, tol);
  LagrangianDiagnostics co = is_coisotropic(V, W, angle_tol, rank_gap);
  co.isotropy_residual = iso.isotropy_residual;
  co.isotropic = iso.isotropic;
  co.lagrangian = co.isotropic && co.coisotropic;
  return co;
}

}  // namespace ymdec
