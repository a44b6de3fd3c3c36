#include "ymdec/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ymdec/errors.hpp"
#include "ymdec/hodge.hpp"
#include "ymdec/homology.hpp"

namespace ymdec {

namespace {

double relative_residual(const SparseMatrix& A, const Eigen::VectorXd& x) {
  const Eigen::VectorXd r = A * x;
  const double scale = (A.cwiseAbs() * x.cwiseAbs()).norm();
  return scale > 0.0 ? r.norm() / scale : r.norm();
}

Eigen::MatrixXd normalize_rows(Eigen::MatrixXd A, Eigen::VectorXd* factors = nullptr) {
  if (factors) factors->resize(A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double n = A.row(i).norm();
    const double f = n > 0.0 ? 1.0 / n : 1.0;
    A.row(i) *= f;
    if (factors) (*factors)(i) = f;
  }
  return A;
}

// Solutions and their gauge-fixed part.
SolutionSpace compute_space(const BoundaryTrace& trace, const Tolerances& tol) {
  const Dec& dec = trace.dec();
  SolutionSpace s;
  NullSpace ns = null_space(normalize_rows(to_dense(trace.euler_lagrange())), tol.rank_relative);
  require_unambiguous(ns.info, tol.rank_gap, "solution_space");
  s.operator_rank = ns.info;
  const Eigen::VectorXd& s1 = dec.star_weights(1);
  s.basis = Subspace::span(ns.basis, s1, tol.rank_relative);

  const SparseMatrix gauge = dec.weak_adjoint(1);
  NullSpace gs = null_space(normalize_rows(to_dense(gauge) * s.basis.columns), tol.rank_relative);
  require_unambiguous(gs.info, tol.rank_gap, "gauge_fixed_solutions");
  s.gauge_directions = gs.info.rank;
  s.gauge_fixed_basis = Subspace::span(s.basis.columns * gs.basis, s1, tol.rank_relative);

  const SimplicialComplex& c = dec.complex();
  std::vector<int> edges(c.count(1));
  for (int e = 0; e < c.count(1); ++e) edges[e] = e;
  s.interior_gauge_directions = rank_mod_p(c.boundary(1), dec.interior_simplices(0), edges);

  for (int j = 0; j < s.basis.dim(); ++j)
    s.max_residual = std::max(s.max_residual,
                              relative_residual(trace.euler_lagrange(), s.basis.columns.col(j)));
  for (int j = 0; j < s.gauge_fixed_basis.dim(); ++j)
    s.max_gauge_residual = std::max(
        s.max_gauge_residual, relative_residual(gauge, s.gauge_fixed_basis.columns.col(j)));
  return s;
}

// Stacked (phi; phi_dot) traces of the columns of B, with phi optionally gauge fixed.
Eigen::MatrixXd trace_block(const BoundaryTrace& trace, const Eigen::MatrixXd& B,
                            const CoclosedProjector* proj) {
  const Eigen::Index m = trace.phi_map().rows();
  Eigen::MatrixXd T(2 * m, B.cols());
  Eigen::MatrixXd phi = trace.phi_map() * B;
  if (proj) phi = proj->matrix() * phi;
  T.topRows(m) = phi;
  T.bottomRows(m) = trace.phi_dot_map() * B;
  return T;
}

}  // namespace

RegionTheory::RegionTheory(const RegionMesh& M, const Tolerances& tol)
    : tol_(tol),
      trace_(M),
      space_(compute_space(trace_, tol)),
      projector_(trace_.sigma_dec()),
      boundary_space_(SymplecticSpace::gauge_fixed(trace_.sigma(), tol.rank_relative)) {
  image_ = make_subspace(boundary_space_, trace_block(trace_, space_.basis.columns, &projector_),
                         tol_.rank_relative);
  require_unambiguous(image_.rank_info, tol_.rank_gap, "restrict");
}

Cochain RegionTheory::solution(const Eigen::VectorXd& coefficients) const {
  if (coefficients.size() != space_.basis.dim())
    throw PreconditionError("coefficient count does not match the solution space dimension");
  return dec().cochain(1, space_.basis.columns * coefficients);
}

BoundaryDatum RegionTheory::trace(const Cochain& eta, bool check) const {
  return trace_.trace(eta, check, tol_.solution);
}

BoundaryDatum RegionTheory::gauge_fixed_trace(const Cochain& eta, bool check) const {
  return gauge_fix_coclosed(trace(eta, check), projector_);
}

const RegionTheory::Extension& RegionTheory::extension() const {
  if (extension_) return *extension_;
  auto ext = std::make_shared<Extension>();
  const Eigen::Index ni = trace_.euler_lagrange().rows();
  const Eigen::Index m = trace_.phi_map().rows();
  const Eigen::Index ne = dec().count(1);
  Eigen::VectorXd el_scale, dot_scale;
  const Eigen::MatrixXd el = normalize_rows(to_dense(trace_.euler_lagrange()), &el_scale);
  const Eigen::MatrixXd dot = normalize_rows(to_dense(trace_.phi_dot_map()), &dot_scale);
  ext->system.resize(ni + 2 * m, ne);
  ext->system << el, to_dense(trace_.phi_map()), dot;
  ext->row_scale.resize(ni + 2 * m);
  ext->row_scale << el_scale, Eigen::VectorXd::Ones(m), dot_scale;
  ext->cod.setThreshold(1e-12);
  ext->cod.compute(ext->system);
  extension_ = ext;
  return *extension_;
}

Eigen::VectorXd RegionTheory::extension_rhs(const BoundaryDatum& datum) const {
  if (!datum.host || !datum.host->same_as(sigma()))
    throw PreconditionError("extend: datum does not live on this region's boundary");
  const Eigen::Index ni = trace_.euler_lagrange().rows();
  const Eigen::Index m = trace_.phi_map().rows();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(ni + 2 * m);
  b.segment(ni, m) = datum.phi.values;
  b.tail(m) = datum.phi_dot.values;
  return b.cwiseProduct(extension().row_scale);
}

double RegionTheory::extension_residual(const BoundaryDatum& datum) const {
  const Eigen::VectorXd b = extension_rhs(datum);
  const double bn = b.norm();
  if (bn == 0.0) return 0.0;
  const Extension& ext = extension();
  const Eigen::VectorXd x = ext.cod.solve(b);
  return (ext.system * x - b).norm() / bn;
}

Cochain RegionTheory::extend(const BoundaryDatum& datum) const {
  const Eigen::VectorXd b = extension_rhs(datum);
  const Extension& ext = extension();
  if (b.norm() == 0.0) return dec().zero(1);
  const Eigen::VectorXd x = ext.cod.solve(b);
  const double res = (ext.system * x - b).norm() / b.norm();
  if (res > tol_.extension) {
    std::ostringstream os;
    os << "boundary datum is not extendable: relative residual " << res << " exceeds "
       << tol_.extension;
    throw NotExtendableError(os.str());
  }
  return dec().cochain(1, x);
}

LagrangianReport RegionTheory::verify_lagrangian() const {
  LagrangianReport r;
  const Dec& d = dec();
  r.mesh = mesh().name();
  r.dim = mesh().dim();
  r.edges = d.count(1);
  r.boundary_edges = sigma().empty() ? 0 : sigma().complex().count(1);
  r.empty_boundary = sigma().empty();
  r.dim_solutions = space_.basis.dim();
  r.dim_gauge_fixed = space_.gauge_fixed_basis.dim();
  r.gauge_directions = space_.gauge_directions;
  r.interior_gauge_directions = space_.interior_gauge_directions;
  r.solution_residual = space_.max_residual;
  r.dim_boundary_space = boundary_space_.dim();
  r.dim_image = image_.dim();

  const HarmonicBasis h = harmonic_neumann_basis(d, 1, tol_.rank_relative);
  r.harmonic_dim = h.basis.dim();

  if (r.empty_boundary) {
    r.isotropic = r.coisotropic = r.half_dimension = r.harmonic_block_ok = true;
    r.lagrangian = true;
    return r;
  }

  r.boundary_b1 = betti_oracle(sigma().complex(), 1);
  const Subspace hb = make_subspace(boundary_space_, trace_block(trace_, h.basis.columns, &projector_),
                                    tol_.rank_relative);
  r.harmonic_block_dim = hb.dim();
  const SimplicialComplex& c = d.complex();
  r.harmonic_block_expected = betti_oracle(c, 1) - relative_betti_oracle(c, 1) +
                              betti_oracle(sigma().complex(), 0) - betti_oracle(c, 0) +
                              relative_betti_oracle(c, 0);
  r.harmonic_block_ok = r.harmonic_block_dim == r.harmonic_block_expected;

  // Raw solution traces: omega(r eta, r xi) over all basis pairs.
  const Eigen::MatrixXd T = trace_block(trace_, space_.basis.columns, nullptr);
  if (T.cols() > 0) {
    const Eigen::MatrixXd pairs = T.transpose() * boundary_space_.omega * T;
    double norm2 = 0.0;
    for (Eigen::Index j = 0; j < T.cols(); ++j)
      norm2 = std::max(norm2, T.col(j).dot(boundary_space_.gram.cwiseAbs().cwiseProduct(T.col(j))));
    const double scale = boundary_space_.scale * norm2;
    const double m = pairs.cwiseAbs().maxCoeff();
    r.isotropy_max = scale > 0.0 ? m / scale : m;
  }

  const LagrangianDiagnostics iso = is_isotropic(image_, boundary_space_, tol_.isotropy);
  r.isotropy_image = iso.isotropy_residual;
  const Subspace C = symplectic_complement(image_, boundary_space_, tol_.rank_gap);
  r.dim_complement = C.dim();
  r.complement_singular_values = C.rank_info.singular_values;
  const Eigen::VectorXd angles = containment_angles(C.columns, image_.columns, image_.gram);
  r.coisotropy_angles.assign(angles.data(), angles.data() + angles.size());
  const RankInfo form = boundary_space_.restricted_rank(tol_.rank_relative);
  r.form_nondegeneracy = form.sigma_max > 0.0 ? form.smallest_retained / form.sigma_max : 0.0;

  r.isotropic = r.isotropy_max <= tol_.isotropy && r.isotropy_image <= tol_.isotropy;
  r.coisotropic = max_or_zero(angles) <= tol_.principal_angle;
  r.half_dimension = 2 * r.dim_image == r.dim_boundary_space && form.rank == r.dim_boundary_space;
  r.lagrangian = r.isotropic && r.coisotropic && r.half_dimension;
  return r;
}

SolutionSpace solution_space(const RegionMesh& M, const Tolerances& tol) {
  return compute_space(BoundaryTrace(M), tol);
}

double action(const Cochain& eta, const Dec& dec) {
  if (eta.degree != 1 || eta.host != dec.complex_ptr())
    throw PreconditionError("action expects a 1-cochain on the region");
  const Cochain f = dec.d(eta);
  return f.values.dot(dec.star_weights(2).cwiseProduct(f.values));
}

double action(const Cochain& eta, const RegionMesh& M) { return action(eta, Dec(M)); }

double theta(const Cochain& eta, const Cochain& X, const Dec& dec) {
  if (eta.degree != 1 || X.degree != 1 || eta.host != dec.complex_ptr() || X.host != eta.host)
    throw PreconditionError("theta expects 1-cochains on the region");
  const Eigen::VectorXd flux = dec.weak_adjoint(2) * (dec.d_matrix(1) * eta.values);
  double s = 0.0;
  for (int e : dec.boundary_simplices(1)) s += X.values(e) * flux(e);
  return -2.0 * s;
}

double theta(const Cochain& eta, const Cochain& X, const RegionMesh& M) {
  return theta(eta, X, Dec(M));
}

ActionIdentity action_identity(const Cochain& eta, const Cochain& eta2, const Dec& dec) {
  const Cochain delta = eta - eta2;
  const double s1 = action(eta, dec);
  const double s2 = action(eta2, dec);
  const double t1 = theta(eta, delta, dec);
  const double t2 = theta(eta2, delta, dec);
  ActionIdentity r;
  r.residual = s1 - s2 + 0.5 * t1 + 0.5 * t2;
  // Same terms evaluated with |d| and absolute values, so roundoff is measured against magnitude.
  const SparseMatrix d1 = dec.d_matrix(1).cwiseAbs();
  const Eigen::VectorXd s2w = dec.star_weights(2).cwiseAbs();
  auto abs_action = [&](const Cochain& a) {
    const Eigen::VectorXd f = d1 * a.values.cwiseAbs();
    return f.dot(s2w.cwiseProduct(f));
  };
  auto abs_theta = [&](const Cochain& a, const Cochain& X) {
    const Eigen::VectorXd flux = d1.transpose() * s2w.cwiseProduct(d1 * a.values.cwiseAbs());
    double s = 0.0;
    for (int e : dec.boundary_simplices(1)) s += std::abs(X.values(e)) * flux(e);
    return 2.0 * s;
  };
  r.scale = abs_action(eta) + abs_action(eta2) + 0.5 * abs_theta(eta, delta) + 0.5 * abs_theta(eta2, delta);
  return r;
}

LagrangianReport verify_lagrangian(const RegionMesh& M, const Tolerances& tol) {
  return RegionTheory(M, tol).verify_lagrangian();
}

namespace {

struct EdgeMap {
  std::vector<int> target;  // edge of the glued mesh
  std::vector<int> sign;    // orientation of the image relative to the glued edge
};

EdgeMap map_edges(const SimplicialComplex& from, const SimplicialComplex& to,
                  const std::vector<int>& vertex_map) {
  EdgeMap m;
  const int ne = from.count(1);
  m.target.resize(ne);
  m.sign.resize(ne);
  for (int e = 0; e < ne; ++e) {
    std::vector<int> v{vertex_map[from.simplex(1, e)[0]], vertex_map[from.simplex(1, e)[1]]};
    const int s = sort_with_parity(v);
    const int t = to.find(v);
    if (s == 0 || t < 0) throw NumericalError("gluing collapsed or lost an edge");
    m.target[e] = t;
    m.sign[e] = s;
  }
  return m;
}

std::vector<int> face_edges(const HypersurfaceMesh& sigma, const std::string& label) {
  return extract_face(sigma, label).ambient_index(1);
}

}  // namespace

GluingReport gluing_check(const RegionMesh& M, const std::string& face_a, const std::string& face_b,
                          const std::map<int, int>& matching, const Tolerances& tol) {
  const GlueResult glued = glue_with_map(M, face_a, face_b, matching);
  const RegionMesh& M1 = glued.mesh;
  GluingReport r;
  r.mesh = M.name();
  r.glued_mesh = M1.name();
  r.face_a = face_a;
  r.face_b = face_b;

  const RegionTheory T(M, tol);
  const RegionTheory T1(M1, tol);
  const SimplicialComplex& c = M.complex();
  const SimplicialComplex& c1 = M1.complex();
  const EdgeMap q = map_edges(c, c1, glued.vertex_map);
  const int ne = c.count(1);
  const int ne1 = c1.count(1);

  // Equalizer: trace agreement and flux cancellation across the matched faces.
  const std::vector<int> ea = face_edges(T.sigma(), face_a);
  const std::vector<int> eb = face_edges(T.sigma(), face_b);
  std::map<int, int> partner;  // glued edge -> face-a edge
  for (int e : ea) partner[q.target[e]] = e;
  const Eigen::MatrixXd F = to_dense(T.dec().weak_adjoint(2) * T.dec().d_matrix(1));
  const auto& boundary1 = c1.boundary_mask(1);
  std::vector<Eigen::RowVectorXd> rows;
  for (int b : eb) {
    auto it = partner.find(q.target[b]);
    if (it == partner.end()) throw NumericalError("matched faces have different edges");
    const int a = it->second;
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(ne);
    row(a) = q.sign[a];
    row(b) = -q.sign[b];
    rows.push_back(row);
    if (!boundary1[q.target[a]]) rows.push_back(q.sign[a] * F.row(a) + q.sign[b] * F.row(b));
  }
  Eigen::MatrixXd C(static_cast<Eigen::Index>(rows.size()), ne);
  for (std::size_t i = 0; i < rows.size(); ++i) C.row(static_cast<Eigen::Index>(i)) = rows[i];
  const Subspace& L = T.solutions().basis;
  NullSpace eq = null_space(normalize_rows(C) * L.columns, tol.rank_relative);
  require_unambiguous(eq.info, tol.rank_gap, "gluing_equalizer");
  const Eigen::VectorXd& s1 = T.dec().star_weights(1);
  const Subspace equalizer = Subspace::span(L.columns * eq.basis, s1, tol.rank_relative);

  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(ne, ne1);
  for (int e = 0; e < ne; ++e) Q(e, q.target[e]) = q.sign[e];
  const Subspace& L1 = T1.solutions().basis;
  const Subspace pullback = Subspace::span(Q * L1.columns, s1, tol.rank_relative);

  r.dim_solutions = L.dim();
  r.dim_glued_solutions = L1.dim();
  r.dim_equalizer = equalizer.dim();
  r.dim_pullback = pullback.dim();
  r.angle_equalizer_in_pullback = max_containment_angle(equalizer, pullback);
  r.angle_pullback_in_equalizer = max_containment_angle(pullback, equalizer);
  r.equalizer_ok = r.dim_equalizer == r.dim_glued_solutions && r.dim_pullback == r.dim_glued_solutions &&
                   r.angle_equalizer_in_pullback <= tol.principal_angle &&
                   r.angle_pullback_in_equalizer <= tol.principal_angle;

  // Action composition on every glued basis solution and on their sum.
  Eigen::MatrixXd probes(ne1, L1.dim() + 1);
  probes.leftCols(L1.dim()) = L1.columns;
  probes.col(L1.dim()) = L1.columns.rowwise().sum();
  double worst = 0.0, scale = 0.0;
  for (Eigen::Index j = 0; j < probes.cols(); ++j) {
    const double s_glued = action(T1.dec().cochain(1, probes.col(j)), T1.dec());
    const double s_cut = action(T.dec().cochain(1, Q * probes.col(j)), T.dec());
    worst = std::max(worst, std::abs(s_glued - s_cut));
    scale = std::max(scale, std::abs(s_glued) + std::abs(s_cut));
  }
  r.action_residual = scale > 0.0 ? worst / scale : worst;
  r.action_ok = r.action_residual <= tol.identity;

  // Boundary bookkeeping: remaining facets and their data.
  std::set<int> glued_faces(ea.begin(), ea.end());
  glued_faces.insert(eb.begin(), eb.end());
  std::set<std::pair<Simplex, std::string>> expected, actual;
  const int n = c.dim();
  for (int f : c.boundary_facets()) {
    const std::string& label = M.face_label(f);
    if (label == face_a || label == face_b) continue;
    Simplex s;
    for (int v : c.simplex(n - 1, f)) s.push_back(glued.vertex_map[v]);
    std::sort(s.begin(), s.end());
    expected.insert({s, label});
  }
  for (int f : c1.boundary_facets()) actual.insert({c1.simplex(n - 1, f), M1.face_label(f)});
  r.facets_consistent = expected == actual;

  const Eigen::MatrixXd F1 = to_dense(T1.dec().weak_adjoint(2) * T1.dec().d_matrix(1));
  double rworst = 0.0, rscale = 0.0;
  for (int e : T.sigma().ambient_index(1)) {
    if (glued_faces.count(e)) continue;
    const int e1 = q.target[e];
    for (Eigen::Index j = 0; j < probes.cols(); ++j) {
      const Eigen::VectorXd cut = Q * probes.col(j);
      const double phi = probes(e1, j) - q.sign[e] * cut(e);
      const double flux = F1.row(e1).dot(probes.col(j)) - q.sign[e] * F.row(e).dot(cut);
      rworst = std::max({rworst, std::abs(phi), std::abs(flux)});
      rscale = std::max({rscale, std::abs(probes(e1, j)),
                         (F1.row(e1).cwiseAbs() * probes.col(j).cwiseAbs())(0)});
    }
  }
  r.restriction_residual = rscale > 0.0 ? rworst / rscale : rworst;
  r.restriction_ok = r.restriction_residual <= tol.identity;

  r.b1_before = betti_oracle(c, 1);
  r.b1_after = betti_oracle(c1, 1);
  r.harmonic_before = harmonic_neumann_basis(T.dec(), 1, tol.rank_relative).basis.dim();
  r.harmonic_after = harmonic_neumann_basis(T1.dec(), 1, tol.rank_relative).basis.dim();
  r.passed = r.equalizer_ok && r.action_ok && r.restriction_ok && r.facets_consistent &&
             r.harmonic_before == r.b1_before && r.harmonic_after == r.b1_after;
  return r;
}

}  // namespace ymdec
