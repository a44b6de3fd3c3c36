#include "ymdec/mesh.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "ymdec/errors.hpp"

namespace ymdec {

Geometry Geometry::from_vertex_coords(const SimplicialComplex& c, const Eigen::MatrixXd& coords) {
  if (coords.rows() != c.num_vertices())
    throw TopologyError("coordinate count does not match vertex count");
  Geometry g;
  g.ambient_dim = static_cast<int>(coords.cols());
  g.vertex_coords = coords;
  const int n = c.dim();
  for (const auto& t : c.simplices(n)) {
    Eigen::MatrixXd block(n + 1, coords.cols());
    for (int i = 0; i <= n; ++i) block.row(i) = coords.row(t[i]);
    g.top_coords.push_back(std::move(block));
  }
  return g;
}

double simplex_volume(const Eigen::MatrixXd& pts) {
  const Eigen::Index k = pts.rows() - 1;
  if (k <= 0) return 1.0;
  Eigen::MatrixXd e = pts.bottomRows(k).rowwise() - pts.row(0);
  double det = (e * e.transpose()).determinant();
  double fact = 1.0;
  for (Eigen::Index i = 2; i <= k; ++i) fact *= static_cast<double>(i);
  return std::sqrt(std::max(0.0, det)) / fact;
}

Metric Metric::build(const SimplicialComplex& c, const Geometry& g) {
  const int n = c.dim();
  Metric m;
  std::vector<Eigen::VectorXi> hits(n + 1);
  m.primal.resize(n + 1);
  m.dual.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    m.primal[k] = Eigen::VectorXd::Zero(c.count(k));
    m.dual[k] = Eigen::VectorXd::Zero(c.count(k));
    hits[k] = Eigen::VectorXi::Zero(c.count(k));
  }
  const unsigned full = (1u << (n + 1)) - 1;
  for (int j = 0; j < c.count(n); ++j) {
    const Simplex& top = c.simplex(n, j);
    const Eigen::MatrixXd& P = g.top_coords[j];
    double diam = 0.0;
    for (int a = 0; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) diam = std::max(diam, (P.row(a) - P.row(b)).norm());
    if (simplex_volume(P) <= 1e-12 * std::pow(diam, n))
      throw TopologyError("degenerate top simplex (zero volume)");

    auto barycenter = [&](unsigned mask) {
      Eigen::RowVectorXd b = Eigen::RowVectorXd::Zero(P.cols());
      for (int i = 0; i <= n; ++i)
        if (mask & (1u << i)) b += P.row(i);
      return Eigen::RowVectorXd(b / std::popcount(mask));
    };

    for (unsigned mask = 1; mask <= full; ++mask) {
      const int k = std::popcount(mask) - 1;
      Simplex face;
      std::vector<int> rem;
      for (int i = 0; i <= n; ++i) {
        if (mask & (1u << i)) face.push_back(top[i]);
        else rem.push_back(i);
      }
      const int idx = c.find(face);
      Eigen::MatrixXd pts(k + 1, P.cols());
      for (int i = 0, r = 0; i <= n; ++i)
        if (mask & (1u << i)) pts.row(r++) = P.row(i);
      m.primal[k](idx) += simplex_volume(pts);
      hits[k](idx) += 1;

      // Flags face < ... < top through the remaining vertices, one per ordering.
      do {
        Eigen::MatrixXd chain(rem.size() + 1, P.cols());
        unsigned acc = mask;
        chain.row(0) = barycenter(acc);
        for (std::size_t r = 0; r < rem.size(); ++r) {
          acc |= 1u << rem[r];
          chain.row(r + 1) = barycenter(acc);
        }
        m.dual[k](idx) += simplex_volume(chain);
      } while (std::next_permutation(rem.begin(), rem.end()));
    }
  }
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i < c.count(k); ++i) {
      if (hits[k](i) == 0) throw TopologyError("simplex not contained in any top simplex");
      m.primal[k](i) /= hits[k](i);
      if (!(m.dual[k](i) > 0.0) || !(m.primal[k](i) > 0.0))
        throw TopologyError("non-positive primal or dual volume");
    }
  }
  return m;
}

RegionMesh RegionMesh::create(std::string name, SimplicialComplex complex, Geometry geometry,
                              const std::map<int, std::string>& labels) {
  const int n = complex.dim();
  if (n < 2 || n > 3) throw TopologyError("region meshes must have dimension 2 or 3");
  RegionMesh M;
  M.name_ = std::move(name);
  std::set<int> bnd(complex.boundary_facets().begin(), complex.boundary_facets().end());
  for (const auto& [f, label] : labels) {
    if (!bnd.count(f)) throw TopologyError("label '" + label + "' attached to a non-boundary facet");
    if (label.empty()) throw TopologyError("empty face label");
  }
  for (int f : bnd)
    if (!labels.count(f)) throw TopologyError("unlabeled boundary facet");
  M.labels_ = labels;
  M.metric_ = std::make_shared<Metric>(Metric::build(complex, geometry));

  std::map<int, std::set<std::string>> ridge_labels;
  for (int f : bnd) {
    for (const auto& r : SimplicialComplex::facets_of(complex.simplex(n - 1, f)))
      ridge_labels[complex.find(r)].insert(labels.at(f));
  }
  for (const auto& [ridge, ls] : ridge_labels) {
    std::vector<std::string> v(ls.begin(), ls.end());
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b) M.corners_[{v[a], v[b]}].push_back(ridge);
  }
  M.complex_ = std::make_shared<SimplicialComplex>(std::move(complex));
  M.geometry_ = std::make_shared<Geometry>(std::move(geometry));
  return M;
}

const std::string& RegionMesh::face_label(int facet) const {
  auto it = labels_.find(facet);
  if (it == labels_.end()) throw PreconditionError("facet is not on the boundary");
  return it->second;
}

std::vector<std::string> RegionMesh::labels() const {
  std::set<std::string> s;
  for (const auto& [f, l] : labels_) s.insert(l);
  return {s.begin(), s.end()};
}

RegionMesh RegionMesh::renamed(std::string name) const {
  RegionMesh copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

HypersurfaceMesh HypersurfaceMesh::assemble(
    std::shared_ptr<const SimplicialComplex> ambient, const std::vector<Simplex>& ambient_tops,
    const std::vector<int>& signs, const std::vector<Eigen::MatrixXd>& coords,
    const std::function<Eigen::RowVectorXd(int)>& vertex_coord,
    const std::vector<std::string>& labels, int orientation_sign) {
  const int n = ambient->dim() - 1;
  std::set<int> verts;
  for (const auto& t : ambient_tops) verts.insert(t.begin(), t.end());
  std::vector<int> ambient_vertex(verts.begin(), verts.end());
  std::map<int, int> local;
  for (std::size_t i = 0; i < ambient_vertex.size(); ++i) local[ambient_vertex[i]] = static_cast<int>(i);

  std::vector<Simplex> tops;
  for (const auto& t : ambient_tops) {
    Simplex s;
    for (int v : t) s.push_back(local.at(v));
    tops.push_back(std::move(s));
  }
  auto cx = std::make_shared<SimplicialComplex>(SimplicialComplex::from_oriented_tops(
      n, static_cast<int>(ambient_vertex.size()), tops, signs));

  HypersurfaceMesh h;
  h.ambient_ = ambient;
  h.orientation_sign_ = orientation_sign;
  h.labels_ = labels;
  h.ambient_index_.resize(n + 1);
  h.local_of_.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i < cx->count(k); ++i) {
      Simplex s;
      for (int v : cx->simplex(k, i)) s.push_back(ambient_vertex[v]);
      int a = ambient->find(s);
      if (a < 0) throw TopologyError("hypersurface simplex missing from the ambient complex");
      h.ambient_index_[k].push_back(a);
      h.local_of_[k][a] = i;
    }
  }
  auto geo = std::make_shared<Geometry>();
  geo->top_coords = coords;
  geo->ambient_dim = coords.empty() ? 0 : static_cast<int>(coords.front().cols());
  geo->vertex_coords.resize(static_cast<Eigen::Index>(ambient_vertex.size()), geo->ambient_dim);
  for (std::size_t i = 0; i < ambient_vertex.size(); ++i)
    geo->vertex_coords.row(static_cast<Eigen::Index>(i)) = vertex_coord(ambient_vertex[i]);
  h.metric_ = std::make_shared<Metric>(Metric::build(*cx, *geo));
  h.edge_weights_ = h.metric_->star(1);
  h.geometry_ = geo;
  h.complex_ = cx;
  return h;
}

HypersurfaceMesh HypersurfaceMesh::from_facets(const RegionMesh& region,
                                               const std::vector<int>& facets,
                                               const std::vector<int>& signs,
                                               const std::vector<std::string>& labels,
                                               int orientation_sign) {
  const auto& c = region.complex();
  const int n = c.dim();
  std::vector<Simplex> tops;
  std::vector<Eigen::MatrixXd> coords;
  for (int f : facets) {
    const Simplex& s = c.simplex(n - 1, f);
    const int j = c.facet_cofaces(f).front();
    const Simplex& top = c.simplex(n, j);
    const Eigen::MatrixXd& P = region.geometry().top_coords[j];
    Eigen::MatrixXd block(n, P.cols());
    for (int r = 0; r < n; ++r) {
      int pos = static_cast<int>(std::find(top.begin(), top.end(), s[r]) - top.begin());
      block.row(r) = P.row(pos);
    }
    tops.push_back(s);
    coords.push_back(std::move(block));
  }
  const Eigen::MatrixXd& vc = region.geometry().vertex_coords;
  return assemble(region.complex_ptr(), tops, signs, coords,
                  [&](int v) { return Eigen::RowVectorXd(vc.row(v)); }, labels, orientation_sign);
}

int HypersurfaceMesh::local_index(int k, int ambient) const {
  if (k < 0 || k >= static_cast<int>(local_of_.size())) return -1;
  auto it = local_of_[k].find(ambient);
  return it == local_of_[k].end() ? -1 : it->second;
}

Eigen::VectorXd HypersurfaceMesh::cochain_signs(int k) const {
  Eigen::VectorXd s = Eigen::VectorXd::Ones(complex_->count(k));
  if (k == complex_->dim())
    for (int i = 0; i < s.size(); ++i) s(i) = complex_->top_orientation(i);
  return s;
}

std::vector<std::string> HypersurfaceMesh::labels() const {
  std::set<std::string> s(labels_.begin(), labels_.end());
  return {s.begin(), s.end()};
}

HypersurfaceMesh HypersurfaceMesh::reversed() const {
  HypersurfaceMesh copy = *this;
  copy.orientation_sign_ = -orientation_sign_;
  return copy;
}

bool HypersurfaceMesh::same_as(const HypersurfaceMesh& other) const {
  if (this == &other) return true;
  return ambient_ == other.ambient_ && orientation_sign_ == other.orientation_sign_ &&
         ambient_index_ == other.ambient_index_ && complex_->orientations() == other.complex_->orientations();
}

HypersurfaceMesh HypersurfaceMesh::sub(const std::vector<int>& local_tops) const {
  const int n = dim();
  std::vector<Simplex> tops;
  std::vector<int> signs;
  std::vector<Eigen::MatrixXd> coords;
  std::vector<std::string> labels;
  for (int t : local_tops) {
    tops.push_back(ambient_->simplex(n, ambient_index_[n][t]));
    signs.push_back(complex_->top_orientation(t));
    coords.push_back(geometry_->top_coords[t]);
    labels.push_back(labels_[t]);
  }
  return assemble(ambient_, tops, signs, coords,
                  [this](int v) {
                    return Eigen::RowVectorXd(geometry_->vertex_coords.row(local_index(0, v)));
                  },
                  labels, orientation_sign_);
}

HypersurfaceMesh boundary_complex(const RegionMesh& M) {
  const auto& c = M.complex();
  std::vector<int> signs;
  std::vector<std::string> labels;
  for (int f : c.boundary_facets()) {
    signs.push_back(c.induced_sign(f));
    labels.push_back(M.face_label(f));
  }
  return HypersurfaceMesh::from_facets(M, c.boundary_facets(), signs, labels, 1);
}

HypersurfaceMesh extract_face(const HypersurfaceMesh& sigma, const std::string& label) {
  std::vector<int> tops;
  for (int t = 0; t < static_cast<int>(sigma.top_labels().size()); ++t)
    if (sigma.label(t) == label) tops.push_back(t);
  if (tops.empty()) throw PreconditionError("unknown face label '" + label + "'");
  return sigma.sub(tops);
}

}  // namespace ymdec
