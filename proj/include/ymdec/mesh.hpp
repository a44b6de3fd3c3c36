#pragma once

#include <Eigen/Core>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ymdec/complex.hpp"

namespace ymdec {

// Piecewise-flat geometry. Each top simplex keeps its own vertex coordinates
// (rows in sorted vertex order), so gluing preserves the intrinsic metric.
struct Geometry {
  int ambient_dim = 0;
  Eigen::MatrixXd vertex_coords;            // one row per vertex, used for export
  std::vector<Eigen::MatrixXd> top_coords;  // one (n+1) x ambient_dim block per top

  static Geometry from_vertex_coords(const SimplicialComplex& c, const Eigen::MatrixXd& coords);
};

// k-dimensional volume of the simplex spanned by the rows of pts (1 for a single point).
double simplex_volume(const Eigen::MatrixXd& pts);

// Primal volumes and barycentric dual volumes per simplex and degree.
struct Metric {
  std::vector<Eigen::VectorXd> primal;
  std::vector<Eigen::VectorXd> dual;

  // Throws TopologyError on a degenerate top simplex.
  static Metric build(const SimplicialComplex& c, const Geometry& g);
  Eigen::VectorXd star(int k) const { return dual[k].cwiseQuotient(primal[k]); }
};

using CornerKey = std::pair<std::string, std::string>;

class RegionMesh {
 public:
  // labels: boundary facet index -> face name. Every boundary facet must be labeled.
  static RegionMesh create(std::string name, SimplicialComplex complex, Geometry geometry,
                           const std::map<int, std::string>& labels);

  const std::string& name() const { return name_; }
  int dim() const { return complex_->dim(); }
  const SimplicialComplex& complex() const { return *complex_; }
  std::shared_ptr<const SimplicialComplex> complex_ptr() const { return complex_; }
  const Geometry& geometry() const { return *geometry_; }
  const Metric& metric() const { return *metric_; }
  const std::map<int, std::string>& face_labels() const { return labels_; }
  const std::string& face_label(int facet) const;
  std::vector<std::string> labels() const;  // sorted, distinct
  // Corner strata: (n-2)-simplices shared by two differently labeled faces.
  const std::map<CornerKey, std::vector<int>>& corners() const { return corners_; }
  RegionMesh renamed(std::string name) const;

 private:
  std::string name_;
  std::shared_ptr<const SimplicialComplex> complex_;
  std::shared_ptr<const Geometry> geometry_;
  std::shared_ptr<const Metric> metric_;
  std::map<int, std::string> labels_;
  std::map<CornerKey, std::vector<int>> corners_;
};

// An (n-1)-dimensional piece of a region boundary with induced metric and orientation.
class HypersurfaceMesh {
 public:
  // facets: ambient (n-1)-simplex indices; signs: induced orientation per facet.
  static HypersurfaceMesh from_facets(const RegionMesh& region, const std::vector<int>& facets,
                                      const std::vector<int>& signs,
                                      const std::vector<std::string>& labels, int orientation_sign);

  int dim() const { return complex_->dim(); }
  const SimplicialComplex& complex() const { return *complex_; }
  std::shared_ptr<const SimplicialComplex> complex_ptr() const { return complex_; }
  const Geometry& geometry() const { return *geometry_; }
  const Metric& metric() const { return *metric_; }
  int orientation_sign() const { return orientation_sign_; }
  std::shared_ptr<const SimplicialComplex> ambient() const { return ambient_; }
  // Local k-simplex -> ambient k-simplex.
  const std::vector<int>& ambient_index(int k) const { return ambient_index_[k]; }
  int local_index(int k, int ambient) const;  // -1 when absent
  // Local k-cochain value = sign * ambient value. Top cochains live on oriented tops.
  Eigen::VectorXd cochain_signs(int k) const;
  const std::string& label(int top) const { return labels_[top]; }
  const std::vector<std::string>& top_labels() const { return labels_; }
  std::vector<std::string> labels() const;
  bool is_closed() const { return complex_->is_closed(); }
  bool empty() const { return complex_->count(complex_->dim()) == 0; }
  // Degree-1 star weights (used by omega and bracket).
  const Eigen::VectorXd& edge_weights() const { return edge_weights_; }

  // Same simplices with the orientation sign flipped.
  HypersurfaceMesh reversed() const;
  // True when both describe the same simplices of the same ambient complex with the same sign.
  bool same_as(const HypersurfaceMesh& other) const;

  // Sub-hypersurface made of the tops with the given label.
  HypersurfaceMesh sub(const std::vector<int>& local_tops) const;

 private:
  std::shared_ptr<const SimplicialComplex> complex_;
  std::shared_ptr<const Geometry> geometry_;
  std::shared_ptr<const Metric> metric_;
  std::shared_ptr<const SimplicialComplex> ambient_;
  std::vector<std::vector<int>> ambient_index_;
  std::vector<std::string> labels_;
  Eigen::VectorXd edge_weights_;
  int orientation_sign_ = 1;

  std::vector<std::map<int, int>> local_of_;

  static HypersurfaceMesh assemble(
      std::shared_ptr<const SimplicialComplex> ambient, const std::vector<Simplex>& ambient_tops,
      const std::vector<int>& signs, const std::vector<Eigen::MatrixXd>& coords,
      const std::function<Eigen::RowVectorXd(int)>& vertex_coord,
      const std::vector<std::string>& labels, int orientation_sign);
};

// Facets incident to exactly one top simplex, with induced orientation and labels.
HypersurfaceMesh boundary_complex(const RegionMesh& M);

// Sub-complex of the facets carrying `label`. Throws PreconditionError for unknown labels.
HypersurfaceMesh extract_face(const HypersurfaceMesh& sigma, const std::string& label);

struct GlueResult {
  RegionMesh mesh;
  std::vector<int> vertex_map;  // old vertex -> glued vertex
};

// Identify face a with face b through `matching` (vertex of a -> vertex of b).
GlueResult glue_with_map(const RegionMesh& M, const std::string& face_a, const std::string& face_b,
                         const std::map<int, int>& matching);
RegionMesh glue(const RegionMesh& M, const std::string& face_a, const std::string& face_b,
                const std::map<int, int>& matching);

// Disjoint union; labels get the given prefixes. Vertices of A come first.
RegionMesh disjoint_union(const RegionMesh& A, const RegionMesh& B, const std::string& prefix_a,
                          const std::string& prefix_b, const std::string& name);

// Same simplices with every top orientation flipped.
RegionMesh reverse_orientation(const RegionMesh& M);

}  // namespace ymdec
