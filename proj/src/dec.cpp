#include "ymdec/dec.hpp"

#include <cmath>

#include "ymdec/errors.hpp"

namespace ymdec {

Cochain Cochain::operator+(const Cochain& o) const {
  if (o.degree != degree || o.values.size() != values.size() || o.dual != dual)
    throw PreconditionError("adding cochains of different type");
  Cochain r = *this;
  r.values += o.values;
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + o * -1.0; }

Cochain Cochain::operator*(double s) const {
  Cochain r = *this;
  r.values *= s;
  return r;
}

Dec::Dec(std::shared_ptr<const SimplicialComplex> complex, const Metric& metric)
    : complex_(std::move(complex)) {
  const int n = complex_->dim();
  for (int k = 0; k < n; ++k) {
    SparseMatrix dk = complex_->boundary(k + 1).cast<double>().transpose();
    d_.push_back(dk);
  }
  for (int k = 0; k <= n; ++k) star_.push_back(metric.star(k));
  if (!stars_positive()) throw NumericalError("Hodge star has a non-positive entry");
}

Dec::Dec(const RegionMesh& M) : Dec(M.complex_ptr(), M.metric()) {}
Dec::Dec(const HypersurfaceMesh& S) : Dec(S.complex_ptr(), S.metric()) {}

bool Dec::stars_positive() const {
  for (const auto& s : star_)
    if (s.size() && !(s.minCoeff() > 0.0)) return false;
  return true;
}

const SparseMatrix& Dec::d_matrix(int k) const {
  if (k < 0 || k >= dim()) throw PreconditionError("exterior derivative degree out of range");
  return d_[k];
}

const Eigen::VectorXd& Dec::star_weights(int k) const {
  if (k < 0 || k > dim()) throw PreconditionError("star degree out of range");
  return star_[k];
}

std::vector<int> Dec::interior_simplices(int k) const {
  std::vector<int> out;
  const auto& mask = boundary_mask(k);
  for (int i = 0; i < count(k); ++i)
    if (!mask[i]) out.push_back(i);
  return out;
}

std::vector<int> Dec::boundary_simplices(int k) const {
  std::vector<int> out;
  const auto& mask = boundary_mask(k);
  for (int i = 0; i < count(k); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

SparseMatrix Dec::weak_adjoint(int k) const {
  if (k < 1 || k > dim()) throw PreconditionError("codifferential degree out of range");
  return SparseMatrix(d_[k - 1].transpose() * diagonal(star_[k]));
}

SparseMatrix Dec::codifferential_matrix(int k) const {
  Eigen::VectorXd left = star_weights(k - 1).cwiseInverse();
  const auto& mask = boundary_mask(k - 1);
  for (int i = 0; i < left.size(); ++i)
    if (mask[i]) left(i) = 0.0;
  SparseMatrix m = diagonal(left) * weak_adjoint(k);
  m.prune(0.0);
  return m;
}

void Dec::check(const Cochain& a, int lo, int hi, const char* op) const {
  if (a.host && a.host != complex_) throw PreconditionError(std::string(op) + ": cochain lives on a different complex");
  if (a.degree < lo || a.degree > hi) throw PreconditionError(std::string(op) + ": degree out of range");
  if (a.values.size() != count(a.degree))
    throw PreconditionError(std::string(op) + ": value count does not match simplex count");
}

Cochain Dec::zero(int k) const { return cochain(k, Eigen::VectorXd::Zero(count(k))); }

Cochain Dec::cochain(int k, Eigen::VectorXd values) const {
  if (k < 0 || k > dim()) throw PreconditionError("cochain degree out of range");
  if (values.size() != count(k)) throw PreconditionError("value count does not match simplex count");
  return {k, std::move(values), complex_, false};
}

Cochain Dec::d(const Cochain& a) const {
  check(a, 0, dim() - 1, "d");
  if (a.dual) throw PreconditionError("d: dual cochain");
  return {a.degree + 1, d_[a.degree] * a.values, complex_, false};
}

Cochain Dec::star(const Cochain& a) const {
  check(a, 0, dim(), "star");
  if (a.dual) throw PreconditionError("star: already dual");
  return {a.degree, star_[a.degree].cwiseProduct(a.values), complex_, true};
}

Cochain Dec::unstar(const Cochain& a) const {
  check(a, 0, dim(), "unstar");
  if (!a.dual) throw PreconditionError("unstar: expects a dual cochain");
  return {a.degree, a.values.cwiseQuotient(star_[a.degree]), complex_, false};
}

Cochain Dec::codifferential(const Cochain& a) const {
  check(a, 1, dim(), "codifferential");
  return {a.degree - 1, codifferential_matrix(a.degree) * a.values, complex_, false};
}

Cochain Dec::neumann_trace(const Cochain& a) const {
  check(a, 1, dim(), "neumann_trace");
  Eigen::VectorXd t = weak_adjoint(a.degree) * a.values;
  const auto& mask = boundary_mask(a.degree - 1);
  for (int i = 0; i < t.size(); ++i)
    if (!mask[i]) t(i) = 0.0;
  return {a.degree - 1, t, complex_, false};
}

double Dec::inner_product(const Cochain& a, const Cochain& b) const {
  check(a, 0, dim(), "inner_product");
  check(b, 0, dim(), "inner_product");
  if (a.degree != b.degree || a.host != b.host) throw PreconditionError("inner_product: mismatched cochains");
  return star_[a.degree].dot(a.values.cwiseProduct(b.values));
}

double Dec::norm(const Cochain& a) const { return std::sqrt(std::max(0.0, inner_product(a, a))); }

double Dec::boundary_pairing(const Cochain& beta, const Cochain& alpha) const {
  check(alpha, 1, dim(), "boundary_pairing");
  check(beta, alpha.degree - 1, alpha.degree - 1, "boundary_pairing");
  return beta.values.dot(neumann_trace(alpha).values);
}

AdjointnessCheck Dec::adjointness(const Cochain& beta, const Cochain& alpha) const {
  const Cochain db = d(beta);
  const Cochain da = codifferential(alpha);
  const Cochain tr = neumann_trace(alpha);
  AdjointnessCheck out;
  out.defect = inner_product(db, alpha) - inner_product(beta, da) - beta.values.dot(tr.values);
  out.scale = norm(db) * norm(alpha) + norm(beta) * norm(da) +
              beta.values.cwiseAbs().dot(tr.values.cwiseAbs());
  return out;
}

double Dec::adjointness_defect(const Cochain& f, const Cochain& alpha) const {
  return adjointness(f, alpha).defect;
}

Dec Dec::with_star_entry(int k, int index, double value) const {
  Dec copy = *this;
  copy.star_.at(k)(index) = value;
  return copy;
}

}  // namespace ymdec
