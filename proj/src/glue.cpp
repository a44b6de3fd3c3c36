#include <algorithm>
#include <numeric>
#include <set>

#include "ymdec/errors.hpp"
#include "ymdec/mesh.hpp"

namespace ymdec {

namespace {

std::vector<int> facets_with_label(const RegionMesh& M, const std::string& label) {
  std::vector<int> out;
  for (const auto& [f, l] : M.face_labels())
    if (l == label) out.push_back(f);
  if (out.empty()) throw PreconditionError("unknown face label '" + label + "'");
  return out;
}

std::set<int> vertices_of(const SimplicialComplex& c, const std::vector<int>& facets) {
  std::set<int> v;
  for (int f : facets) {
    const auto& s = c.simplex(c.dim() - 1, f);
    v.insert(s.begin(), s.end());
  }
  return v;
}

}  // namespace

GlueResult glue_with_map(const RegionMesh& M, const std::string& face_a, const std::string& face_b,
                         const std::map<int, int>& matching) {
  if (face_a == face_b) throw PreconditionError("cannot glue face '" + face_a + "' to itself");
  const auto& c = M.complex();
  const int n = c.dim();
  auto fa = facets_with_label(M, face_a);
  auto fb = facets_with_label(M, face_b);
  auto va = vertices_of(c, fa);
  auto vb = vertices_of(c, fb);
  for (int v : va)
    if (vb.count(v)) throw PreconditionError("faces '" + face_a + "' and '" + face_b + "' share simplices");

  std::set<int> image;
  for (const auto& [from, to] : matching) {
    if (!va.count(from) || !vb.count(to))
      throw PreconditionError("matching must map vertices of face a onto vertices of face b");
    image.insert(to);
  }
  if (matching.size() != va.size() || image.size() != vb.size())
    throw PreconditionError("matching is not a bijection between the face vertex sets");

  std::map<Simplex, int> b_facets;
  for (int f : fb) b_facets[c.simplex(n - 1, f)] = f;
  for (int f : fa) {
    std::vector<int> mapped;
    for (int v : c.simplex(n - 1, f)) mapped.push_back(matching.at(v));
    const int parity = sort_with_parity(mapped);
    auto it = b_facets.find(mapped);
    if (it == b_facets.end())
      throw TopologyError("faces are not combinatorially isomorphic under the matching");
    if (c.induced_sign(f) * parity != -c.induced_sign(it->second))
      throw OrientationError("matching does not reverse orientation");
  }
  if (fa.size() != fb.size()) throw TopologyError("faces are not combinatorially isomorphic under the matching");

  // b-vertices collapse onto their a-partners; remaining vertices are renumbered in order.
  std::map<int, int> inverse;
  for (const auto& [from, to] : matching) inverse[to] = from;
  std::vector<int> vmap(c.num_vertices(), -1);
  int next = 0;
  for (int v = 0; v < c.num_vertices(); ++v)
    if (!vb.count(v)) vmap[v] = next++;
  for (int v : vb) vmap[v] = vmap[inverse.at(v)];

  const Geometry& g = M.geometry();
  std::vector<Simplex> tops;
  std::vector<int> signs;
  Geometry glued_geo;
  glued_geo.ambient_dim = g.ambient_dim;
  for (int j = 0; j < c.count(n); ++j) {
    const Simplex& t = c.simplex(n, j);
    std::vector<int> order(n + 1);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return vmap[t[x]] < vmap[t[y]]; });
    std::vector<int> mapped;
    for (int v : t) mapped.push_back(vmap[v]);
    const int parity = sort_with_parity(mapped);
    if (parity == 0) throw TopologyError("gluing produces a degenerate simplex");
    Eigen::MatrixXd block(n + 1, g.ambient_dim);
    for (int r = 0; r <= n; ++r) block.row(r) = g.top_coords[j].row(order[r]);
    tops.push_back(mapped);
    signs.push_back(c.top_orientation(j) * parity);
    glued_geo.top_coords.push_back(std::move(block));
  }
  SimplicialComplex glued = SimplicialComplex::from_oriented_tops(n, next, tops, signs);
  glued.verify_chain_complex();

  glued_geo.vertex_coords.resize(next, g.ambient_dim);
  for (int v = 0; v < c.num_vertices(); ++v)
    if (!vb.count(v)) glued_geo.vertex_coords.row(vmap[v]) = g.vertex_coords.row(v);

  std::set<int> glued_facets(fa.begin(), fa.end());
  glued_facets.insert(fb.begin(), fb.end());
  std::map<int, std::string> labels;
  for (const auto& [f, l] : M.face_labels()) {
    if (glued_facets.count(f)) continue;
    Simplex s;
    for (int v : c.simplex(n - 1, f)) s.push_back(vmap[v]);
    std::sort(s.begin(), s.end());
    const int idx = glued.find(s);
    if (idx < 0 || glued.facet_cofaces(idx).size() != 1)
      throw TopologyError("remaining boundary facet became interior after gluing");
    labels[idx] = l;
  }
  RegionMesh mesh = RegionMesh::create(M.name() + "/glued(" + face_a + "," + face_b + ")",
                                       std::move(glued), std::move(glued_geo), labels);
  return {std::move(mesh), std::move(vmap)};
}

RegionMesh glue(const RegionMesh& M, const std::string& face_a, const std::string& face_b,
                const std::map<int, int>& matching) {
  return glue_with_map(M, face_a, face_b, matching).mesh;
}

RegionMesh disjoint_union(const RegionMesh& A, const RegionMesh& B, const std::string& prefix_a,
                          const std::string& prefix_b, const std::string& name) {
  if (A.dim() != B.dim()) throw PreconditionError("disjoint union of regions of different dimension");
  if (A.geometry().ambient_dim != B.geometry().ambient_dim)
    throw PreconditionError("disjoint union of regions with different embedding dimension");
  const int n = A.dim();
  const int offset = A.complex().num_vertices();
  std::vector<Simplex> tops;
  std::vector<int> signs;
  Geometry geo;
  geo.ambient_dim = A.geometry().ambient_dim;
  const RegionMesh* parts[] = {&A, &B};
  for (int p = 0; p < 2; ++p) {
    const RegionMesh* part = parts[p];
    const int shift = p == 0 ? 0 : offset;
    for (int j = 0; j < part->complex().count(n); ++j) {
      Simplex t = part->complex().simplex(n, j);
      for (int& v : t) v += shift;
      tops.push_back(t);
      signs.push_back(part->complex().top_orientation(j));
      geo.top_coords.push_back(part->geometry().top_coords[j]);
    }
  }
  geo.vertex_coords.resize(offset + B.complex().num_vertices(), geo.ambient_dim);
  geo.vertex_coords << A.geometry().vertex_coords, B.geometry().vertex_coords;
  SimplicialComplex c = SimplicialComplex::from_oriented_tops(
      n, offset + B.complex().num_vertices(), tops, signs);
  std::map<int, std::string> labels;
  for (int p = 0; p < 2; ++p) {
    const RegionMesh* part = parts[p];
    const int shift = p == 0 ? 0 : offset;
    const std::string& prefix = p == 0 ? prefix_a : prefix_b;
    for (const auto& [f, l] : part->face_labels()) {
      Simplex s = part->complex().simplex(n - 1, f);
      for (int& v : s) v += shift;
      labels[c.find(s)] = prefix + l;
    }
  }
  return RegionMesh::create(name, std::move(c), std::move(geo), labels);
}

RegionMesh reverse_orientation(const RegionMesh& M) {
  const auto& c = M.complex();
  std::vector<int> signs = c.orientations();
  for (int& s : signs) s = -s;
  SimplicialComplex r =
      SimplicialComplex::from_oriented_tops(c.dim(), c.num_vertices(), c.simplices(c.dim()), signs);
  return RegionMesh::create(M.name() + "/reversed", std::move(r), M.geometry(), M.face_labels());
}

}  // namespace ymdec
