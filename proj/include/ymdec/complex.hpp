#pragma once

#include <Eigen/SparseCore>
#include <map>
#include <vector>

namespace ymdec {

using Simplex = std::vector<int>;  // sorted vertex ids
using IncidenceMatrix = Eigen::SparseMatrix<int>;

// Oriented simplicial complex. Simplices are sorted vertex tuples; top simplices
// carry a separate orientation sign relative to their sorted order.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Tops listed with their vertex order; the orientation is the parity of that order.
  static SimplicialComplex from_ordered_tops(int dim, int num_vertices,
                                             const std::vector<std::vector<int>>& tops);
  // Tops as sorted tuples with explicit signs.
  static SimplicialComplex from_oriented_tops(int dim, int num_vertices,
                                              const std::vector<Simplex>& tops,
                                              const std::vector<int>& signs);

  int dim() const { return dim_; }
  int num_vertices() const { return count(0); }
  int count(int k) const;
  const Simplex& simplex(int k, int i) const { return simplices_[k][i]; }
  const std::vector<Simplex>& simplices(int k) const { return simplices_[k]; }
  int find(const Simplex& sorted) const;  // -1 when absent
  int top_orientation(int i) const { return orientation_[i]; }
  const std::vector<int>& orientations() const { return orientation_; }

  // Rows are (k-1)-simplices, columns k-simplices, 1 <= k <= dim.
  const IncidenceMatrix& boundary(int k) const { return boundary_[k]; }

  // Facets ((dim-1)-simplices) with exactly one coface, in increasing index order.
  const std::vector<int>& boundary_facets() const { return boundary_facets_; }
  // The top simplices containing a facet.
  const std::vector<int>& facet_cofaces(int facet) const { return facet_cofaces_[facet]; }
  // Coefficient of a boundary facet in the boundary of the fundamental chain.
  int induced_sign(int facet) const;
  // Per k: 1 when the simplex lies in a boundary facet.
  const std::vector<char>& boundary_mask(int k) const { return boundary_mask_[k]; }
  bool is_closed() const { return boundary_facets_.empty(); }

  // Throws TopologyError unless boundary(k-1) * boundary(k) == 0 in integers.
  void verify_chain_complex() const;

  // Sorted sub-tuples of `s` obtained by deleting one vertex; entry i deletes s[i].
  static std::vector<Simplex> facets_of(const Simplex& s);

 private:
  void build(const std::vector<Simplex>& tops, const std::vector<int>& signs);

  int dim_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, int>> index_;
  std::vector<int> orientation_;
  std::vector<IncidenceMatrix> boundary_;
  std::vector<int> boundary_facets_;
  std::vector<std::vector<int>> facet_cofaces_;
  std::vector<std::vector<char>> boundary_mask_;
};

// Sign of the permutation sorting `v`, and the sorted tuple. Zero sign on repeated entries.
int sort_with_parity(std::vector<int>& v);

}  // namespace ymdec
