#include "ymdec/ym2d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ymdec/builtin.hpp"
#include "ymdec/dynamics.hpp"
#include "ymdec/errors.hpp"
#include "ymdec/symplectic.hpp"

namespace ymdec {

namespace {

void require_2d(const RegionMesh& M) {
  if (M.dim() != 2) throw PreconditionError("the 2D example needs a 2D region, got dimension " +
                                            std::to_string(M.dim()));
}

// Connected components of a 1D complex: component id per edge.
std::vector<int> edge_components(const SimplicialComplex& c, int* count) {
  std::vector<int> parent(c.count(0));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : c.simplices(1)) parent[find(e[0])] = find(e[1]);
  std::vector<int> id(c.count(0), -1);
  int n = 0;
  for (int v = 0; v < c.count(0); ++v)
    if (id[find(v)] < 0) id[find(v)] = n++;
  std::vector<int> out;
  for (const auto& e : c.simplices(1)) out.push_back(id[find(e[0])]);
  *count = n;
  return out;
}

}  // namespace

CurvatureReport curvature_constant(const Cochain& eta, const RegionMesh& M) {
  require_2d(M);
  if (eta.degree != 1 || eta.host != M.complex_ptr())
    throw PreconditionError("curvature_constant expects a 1-cochain on the region");
  const Dec dec(M);
  const Eigen::VectorXd f = dec.d(eta).values;
  const Eigen::VectorXd& area = M.metric().primal[2];
  CurvatureReport r;
  r.c_dot = f.sum() / area.sum();
  double scale = 0.0;
  for (Eigen::Index t = 0; t < f.size(); ++t) {
    const double ratio = f(t) / area(t);
    r.per_face.push_back(ratio);
    r.max_deviation = std::max(r.max_deviation, std::abs(ratio - r.c_dot));
    scale = std::max(scale, std::abs(ratio));
  }
  r.relative_deviation = scale > 0.0 ? r.max_deviation / scale : r.max_deviation;
  return r;
}

double total_length(const HypersurfaceMesh& loop) {
  if (loop.dim() != 1) throw PreconditionError("expected a 1D loop");
  return loop.metric().primal[1].sum();
}

BoundaryDatum constant_datum(std::shared_ptr<const HypersurfaceMesh> loop, const Reduced2dDatum& d) {
  if (loop->dim() != 1) throw PreconditionError("constant data live on 1D loops");
  const Eigen::VectorXd& len = loop->metric().primal[1];
  return make_datum(loop, d.c * len, d.c_dot * len);
}

LineReport lagrangian_line_check(const RegionMesh& M, const Tolerances& tol) {
  require_2d(M);
  const RegionTheory T(M, tol);
  const HypersurfaceMesh& S = T.sigma();
  LineReport r;
  r.mesh = M.name();
  r.area = M.metric().primal[2].sum();
  if (S.empty()) throw PreconditionError("the region has no boundary");
  r.perimeter = total_length(S);
  r.slope = r.perimeter / r.area;
  int ncomp = 0;
  const std::vector<int> comp = edge_components(S.complex(), &ncomp);
  r.boundary_components = ncomp;
  r.component_lengths.assign(ncomp, 0.0);
  for (std::size_t e = 0; e < comp.size(); ++e)
    r.component_lengths[comp[e]] += S.metric().primal[1](static_cast<Eigen::Index>(e));

  // Discrete Stokes on every solution: circulation over dM equals c_dot * area.
  const Dec& dec = T.dec();
  const Subspace& L = T.solutions().basis;
  Eigen::MatrixXd probes(L.ambient_dim(), L.dim() + 1);
  probes.leftCols(L.dim()) = L.columns;
  probes.col(L.dim()) = L.columns.rowwise().sum();
  for (Eigen::Index j = 0; j < probes.cols(); ++j) {
    const Cochain eta = dec.cochain(1, probes.col(j));
    const BoundaryDatum b = T.trace(eta);
    const double circulation = b.phi.values.sum();
    const CurvatureReport k = curvature_constant(eta, M);
    const double scale = b.phi.values.cwiseAbs().sum() + dec.d(eta).values.cwiseAbs().sum();
    const double res = std::abs(circulation - k.c_dot * r.area);
    r.max_residual = std::max(r.max_residual, scale > 0.0 ? res / scale : res);
    ++r.solutions_checked;
  }

  bool line_ok = true;
  if (ncomp == 1) {
    r.line_checked = true;
    const auto host = T.sigma_ptr();
    const BoundaryDatum on = constant_datum(host, {1.0, r.slope});
    const BoundaryDatum off = constant_datum(host, {1.0, 2.0 * r.slope});
    r.on_line_residual = T.extension_residual(on);
    r.off_line_residual = T.extension_residual(off);
    try {
      const Cochain eta = T.extend(on);
      r.measured_slope = curvature_constant(eta, M).c_dot;
      r.slope_error = std::abs(r.measured_slope - r.slope) / r.slope;
    } catch (const NotExtendableError&) {
      r.slope_error = 1.0;
    }
    try {
      T.extend(off);
    } catch (const NotExtendableError&) {
      r.off_line_rejected = true;
    }
    line_ok = r.slope_error <= tol.line && r.off_line_rejected;
  }
  r.passed = r.max_residual <= tol.line && line_ok;
  return r;
}

ReducedFormReport reduced_form_check(const HypersurfaceMesh& loop, const Tolerances& tol) {
  ReducedFormReport r;
  r.length = total_length(loop);
  auto host = std::make_shared<HypersurfaceMesh>(loop);
  const double L = r.length;
  r.omega_unit = omega(constant_datum(host, {1.0, 0.0}), constant_datum(host, {0.0, 1.0}));
  r.kappa = r.omega_unit / L;
  const Reduced2dDatum samples[][2] = {{{2.0, -1.0}, {0.5, 3.0}}, {{-1.5, 0.25}, {4.0, 1.0}},
                                       {{0.75, 2.0}, {-3.0, 0.5}}};
  for (const auto& p : samples) {
    const double w = omega(constant_datum(host, p[0]), constant_datum(host, p[1]));
    const double k = w / (L * (p[0].c * p[1].c_dot - p[1].c * p[0].c_dot));
    r.kappa_spread = std::max(r.kappa_spread, std::abs(k - r.kappa));
  }
  r.self_pair = omega(constant_datum(host, {1.3, -0.7}), constant_datum(host, {1.3, -0.7}));
  r.kappa_matches_formula = std::abs(r.kappa - r.formula_kappa) <= tol.kappa;
  r.discrepancy_flag = std::abs(r.kappa - r.claimed_kappa) > tol.kappa;
  std::ostringstream os;
  os << "measured kappa " << r.kappa << " from omega = (1/2)(<phi, phi_dot'> - <phi', phi_dot>);"
     << " the reduced-structure statement 'length times the area form' corresponds to kappa = 1;"
     << " not normalized";
  r.note = os.str();
  return r;
}

CylinderPoint holonomy_quotient(const Reduced2dDatum& d, const HypersurfaceMesh& loop) {
  return {wrap_angle(d.c * total_length(loop)), d.c_dot};
}

CylinderPoint holonomy_quotient(const BoundaryDatum& d) {
  const double L = total_length(*d.host);
  return {wrap_angle(d.phi.values.sum()), d.phi_dot.values.sum() / L};
}

std::vector<LineSweepRow> line_sweep(const std::vector<int>& Ns, const Tolerances& tol) {
  std::vector<LineSweepRow> rows;
  for (int N : Ns) {
    const LineReport r = lagrangian_line_check(builtin::disk(N), tol);
    rows.push_back({N, r.area, r.perimeter, r.slope, r.max_residual});
  }
  return rows;
}

}  // namespace ymdec
