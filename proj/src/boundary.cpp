#include "ymdec/boundary.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <cmath>
#include <numbers>

#include "ymdec/errors.hpp"
#include "ymdec/hodge.hpp"

namespace ymdec {

BoundaryDatum make_datum(std::shared_ptr<const HypersurfaceMesh> host, Eigen::VectorXd phi,
                         Eigen::VectorXd phi_dot) {
  const int m = host->complex().count(1);
  if (phi.size() != m || phi_dot.size() != m)
    throw PreconditionError("boundary datum size does not match the hypersurface edges");
  BoundaryDatum d;
  d.phi = {1, std::move(phi), host->complex_ptr(), false};
  d.phi_dot = {1, std::move(phi_dot), host->complex_ptr(), false};
  d.host = std::move(host);
  return d;
}

BoundaryDatum reversed(const BoundaryDatum& a) {
  return make_datum(std::make_shared<HypersurfaceMesh>(a.host->reversed()), a.phi.values,
                    a.phi_dot.values);
}

BoundaryDatum restrict_datum(const BoundaryDatum& a, std::shared_ptr<const HypersurfaceMesh> part) {
  if (part->ambient() != a.host->ambient() || part->orientation_sign() != a.host->orientation_sign())
    throw PreconditionError("sub-hypersurface does not belong to the datum's host");
  const int m = part->complex().count(1);
  Eigen::VectorXd phi(m), phi_dot(m);
  for (int e = 0; e < m; ++e) {
    const int local = a.host->local_index(1, part->ambient_index(1)[e]);
    if (local < 0) throw PreconditionError("sub-hypersurface edge missing from the host");
    phi(e) = a.phi.values(local);
    phi_dot(e) = a.phi_dot.values(local);
  }
  return make_datum(std::move(part), std::move(phi), std::move(phi_dot));
}

BoundaryTrace::BoundaryTrace(const RegionMesh& M)
    : region_(M),
      dec_(M),
      sigma_(std::make_shared<HypersurfaceMesh>(boundary_complex(M))),
      sigma_dec_(*sigma_) {
  const int ne = dec_.count(1);
  const HypersurfaceMesh& S = *sigma_;
  std::vector<int> amb = S.ambient_index(1);
  SparseMatrix sel = diagonal(S.cochain_signs(1)) * selector(amb, ne);
  phi_map_ = sel;
  const SparseMatrix curl_energy = dec_.weak_adjoint(2) * dec_.d_matrix(1);
  flux_map_ = sel * curl_energy;
  Eigen::VectorXd scale = (S.edge_weights() * S.orientation_sign()).cwiseInverse();
  phi_dot_map_ = diagonal(scale) * flux_map_;
  interior_edges_ = dec_.interior_simplices(1);
  el_ = selector(interior_edges_, ne) * curl_energy;
}

double BoundaryTrace::euler_lagrange_residual(const Cochain& eta) const {
  const Eigen::VectorXd r = el_ * eta.values;
  const double scale = (el_.cwiseAbs() * eta.values.cwiseAbs()).norm();
  return scale > 0.0 ? r.norm() / scale : r.norm();
}

BoundaryDatum BoundaryTrace::trace(const Cochain& eta, bool check, double tol) const {
  if (eta.host != dec_.complex_ptr() || eta.degree != 1)
    throw PreconditionError("trace_solution expects a 1-cochain on the region");
  if (check && euler_lagrange_residual(eta) > tol)
    throw PreconditionError("trace_solution: input does not satisfy the Euler-Lagrange equation");
  return make_datum(sigma_, phi_map_ * eta.values, phi_dot_map_ * eta.values);
}

BoundaryDatum BoundaryTrace::trace_face(const Cochain& eta, const std::string& label, bool check,
                                        double tol) const {
  auto face = std::make_shared<HypersurfaceMesh>(extract_face(*sigma_, label));
  return restrict_datum(trace(eta, check, tol), face);
}

CoclosedProjector::CoclosedProjector(const Dec& sigma) : dec_(sigma) {
  const int nv = sigma.count(0);
  const int ne = sigma.count(1);
  if (nv == 0) {
    solve_.resize(0, ne);
    P_ = Eigen::MatrixXd::Identity(ne, ne);
    return;
  }
  const Eigen::MatrixXd d0 = to_dense(sigma.d_matrix(0));
  const Eigen::MatrixXd W = d0.transpose() * sigma.star_weights(1).asDiagonal();
  const Eigen::MatrixXd L = W * d0;
  // Minimum-norm solution of L f = -W phi: f is orthogonal to the per-component constants.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(L);
  cod.setThreshold(1e-12);
  solve_ = -cod.pseudoInverse() * W;
  P_ = Eigen::MatrixXd::Identity(ne, ne) + d0 * solve_;
}

Eigen::VectorXd CoclosedProjector::apply(const Eigen::VectorXd& phi) const { return P_ * phi; }
Eigen::VectorXd CoclosedProjector::potential(const Eigen::VectorXd& phi) const { return solve_ * phi; }

BoundaryDatum gauge_fix_coclosed(const BoundaryDatum& datum, const CoclosedProjector& proj) {
  return make_datum(datum.host, proj.apply(datum.phi.values), proj.apply(datum.phi_dot.values));
}

BoundaryDatum gauge_fix_coclosed(const BoundaryDatum& datum) {
  return gauge_fix_coclosed(datum, CoclosedProjector(Dec(*datum.host)));
}

double wrap_angle(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(x, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

double circle_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, 2.0 * std::numbers::pi - d);
}

namespace {

// Cycles are chains on sorted edges; on a 1D complex the cochain values live on oriented edges.
double cycle_integral(const SimplicialComplex& c, const Eigen::Ref<const Eigen::VectorXd>& phi,
                      const Cycle& gamma) {
  double s = 0.0;
  for (const auto& [e, coef] : gamma.edges)
    s += coef * (c.dim() == 1 ? c.top_orientation(e) : 1) * phi(e);
  return s;
}

}  // namespace

HolonomyValue holonomy(const Cochain& phi, const Cycle& gamma) {
  if (!phi.host || phi.degree != 1) throw PreconditionError("holonomy expects a 1-cochain");
  if (!is_cycle(*phi.host, gamma)) throw PreconditionError("holonomy: path is not a cycle");
  HolonomyValue h;
  h.integral = cycle_integral(*phi.host, phi.values, gamma);
  h.circle = wrap_angle(h.integral);
  return h;
}

PeriodBasis integer_period_basis(const Dec& sigma) {
  PeriodBasis out;
  out.generators = homology_generators(sigma.complex());
  const int b = static_cast<int>(out.generators.size());
  const HarmonicBasis h = harmonic_neumann_basis(sigma, 1);
  if (h.basis.dim() != b)
    throw NumericalError("harmonic dimension " + std::to_string(h.basis.dim()) +
                         " does not match the number of homology generators " + std::to_string(b));
  Eigen::MatrixXd per(b, b);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) {
      per(i, j) = cycle_integral(sigma.complex(), h.basis.columns.col(j), out.generators[i]);
    }
  out.basis = b ? Eigen::MatrixXd(h.basis.columns * (2.0 * std::numbers::pi * per.inverse()))
                : Eigen::MatrixXd(sigma.count(1), 0);
  out.periods.resize(b, b);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) {
      out.periods(i, j) = cycle_integral(sigma.complex(), out.basis.col(j), out.generators[i]);
    }
  return out;
}

BoundaryDatum apply_gauge(const BoundaryDatum& datum, const GaugeTransformation& g,
                          const PeriodBasis* periods) {
  Eigen::VectorXd phi = datum.phi.values;
  const SimplicialComplex& c = datum.host->complex();
  if (g.f.size()) {
    if (g.f.size() != c.count(0)) throw PreconditionError("gauge function size mismatch");
    phi += c.boundary(1).cast<double>().transpose() * g.f;
  }
  if (!g.winding.empty()) {
    if (!periods || static_cast<int>(g.winding.size()) != periods->basis.cols())
      throw PreconditionError("winding vector length must equal the first Betti number");
    for (std::size_t i = 0; i < g.winding.size(); ++i)
      phi += static_cast<double>(g.winding[i]) * periods->basis.col(static_cast<Eigen::Index>(i));
  }
  return make_datum(datum.host, std::move(phi), datum.phi_dot.values);
}

BoundaryDatum large_gauge_orbit(const BoundaryDatum& datum, const std::vector<long long>& winding,
                                const PeriodBasis& periods) {
  if (static_cast<int>(winding.size()) != periods.basis.cols())
    throw PreconditionError("winding vector length must equal the first Betti number");
  return apply_gauge(datum, {Eigen::VectorXd(), winding}, &periods);
}

}  // namespace ymdec
