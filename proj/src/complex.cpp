#include "ymdec/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ymdec/errors.hpp"

namespace ymdec {

namespace {

std::string describe(const Simplex& s) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ")";
  return os.str();
}

void add_closure(const Simplex& s, std::vector<std::set<Simplex>>& faces) {
  const int k = static_cast<int>(s.size()) - 1;
  if (!faces[k].insert(s).second || k == 0) return;
  for (const auto& f : SimplicialComplex::facets_of(s)) add_closure(f, faces);
}

}  // namespace

int sort_with_parity(std::vector<int>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] == v[i - 1]) return 0;
  return sign;
}

std::vector<Simplex> SimplicialComplex::facets_of(const Simplex& s) {
  std::vector<Simplex> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != i) f.push_back(s[j]);
    out.push_back(std::move(f));
  }
  return out;
}

SimplicialComplex SimplicialComplex::from_ordered_tops(int dim, int num_vertices,
                                                       const std::vector<std::vector<int>>& tops) {
  std::vector<Simplex> sorted;
  std::vector<int> signs;
  for (const auto& t : tops) {
    Simplex s = t;
    int sign = sort_with_parity(s);
    if (sign == 0) throw TopologyError("degenerate simplex " + describe(t) + " repeats a vertex");
    sorted.push_back(std::move(s));
    signs.push_back(sign);
  }
  SimplicialComplex c;
  c.dim_ = dim;
  c.simplices_.resize(dim + 1);
  for (int v = 0; v < num_vertices; ++v) c.simplices_[0].push_back({v});
  c.build(sorted, signs);
  return c;
}

SimplicialComplex SimplicialComplex::from_oriented_tops(int dim, int num_vertices,
                                                        const std::vector<Simplex>& tops,
                                                        const std::vector<int>& signs) {
  SimplicialComplex c;
  c.dim_ = dim;
  c.simplices_.resize(dim + 1);
  for (int v = 0; v < num_vertices; ++v) c.simplices_[0].push_back({v});
  c.build(tops, signs);
  return c;
}

void SimplicialComplex::build(const std::vector<Simplex>& tops, const std::vector<int>& signs) {
  const int n = dim_;
  if (n < 1 || n > 3) throw TopologyError("complex dimension must be 1, 2 or 3");
  if (tops.size() != signs.size()) throw TopologyError("one orientation sign per top simplex required");
  const int nv = static_cast<int>(simplices_[0].size());

  std::vector<std::set<Simplex>> faces(n + 1);
  std::set<Simplex> seen;
  for (std::size_t i = 0; i < tops.size(); ++i) {
    const Simplex& t = tops[i];
    if (static_cast<int>(t.size()) != n + 1)
      throw TopologyError("top simplex " + describe(t) + " has wrong size");
    if (!std::is_sorted(t.begin(), t.end()) || std::adjacent_find(t.begin(), t.end()) != t.end())
      throw TopologyError("top simplex " + describe(t) + " is degenerate or unsorted");
    for (int v : t)
      if (v < 0 || v >= nv) throw TopologyError("vertex index out of range in " + describe(t));
    if (signs[i] != 1 && signs[i] != -1) throw OrientationError("orientation sign must be +1 or -1");
    if (!seen.insert(t).second) throw TopologyError("repeated top simplex " + describe(t));
    add_closure(t, faces);
  }
  std::set<int> used;
  for (const auto& s : faces[0]) used.insert(s[0]);
  if (static_cast<int>(used.size()) != nv && !tops.empty())
    throw TopologyError("vertex not referenced by any top simplex");

  // Tops keep the caller's order; lower simplices are sorted lexicographically.
  index_.assign(n + 1, {});
  for (int k = 1; k < n; ++k) simplices_[k].assign(faces[k].begin(), faces[k].end());
  simplices_[n] = tops;
  orientation_ = signs;
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i < static_cast<int>(simplices_[k].size()); ++i) index_[k][simplices_[k][i]] = i;

  boundary_.assign(n + 1, IncidenceMatrix());
  for (int k = 1; k <= n; ++k) {
    std::vector<Eigen::Triplet<int>> trip;
    for (int j = 0; j < count(k); ++j) {
      auto fs = facets_of(simplices_[k][j]);
      for (std::size_t i = 0; i < fs.size(); ++i) {
        int sign = (i % 2 == 0) ? 1 : -1;
        if (k == n) sign *= orientation_[j];
        trip.emplace_back(index_[k - 1].at(fs[i]), j, sign);
      }
    }
    boundary_[k].resize(count(k - 1), count(k));
    boundary_[k].setFromTriplets(trip.begin(), trip.end());
  }

  facet_cofaces_.assign(count(n - 1), {});
  for (int j = 0; j < count(n); ++j)
    for (const auto& f : facets_of(simplices_[n][j])) facet_cofaces_[index_[n - 1].at(f)].push_back(j);

  boundary_facets_.clear();
  for (int f = 0; f < count(n - 1); ++f) {
    const auto& co = facet_cofaces_[f];
    if (co.size() > 2)
      throw TopologyError("non-manifold facet " + describe(simplices_[n - 1][f]) + " has " +
                          std::to_string(co.size()) + " cofaces");
    if (co.size() == 1) boundary_facets_.push_back(f);
  }

  // Interior facets must receive opposite coefficients from their two cofaces.
  {
    Eigen::VectorXi sum = Eigen::VectorXi::Zero(count(n - 1));
    for (int j = 0; j < boundary_[n].outerSize(); ++j)
      for (IncidenceMatrix::InnerIterator it(boundary_[n], j); it; ++it) sum(it.row()) += it.value();
    for (int f = 0; f < count(n - 1); ++f)
      if (facet_cofaces_[f].size() == 2 && sum(f) != 0)
        throw OrientationError("inconsistent orientation across facet " +
                               describe(simplices_[n - 1][f]));
  }

  boundary_mask_.assign(n + 1, {});
  for (int k = 0; k <= n; ++k) boundary_mask_[k].assign(count(k), 0);
  for (int f : boundary_facets_) {
    std::vector<std::set<Simplex>> sub(n + 1);
    add_closure(simplices_[n - 1][f], sub);
    for (int k = 0; k < n; ++k)
      for (const auto& s : sub[k]) boundary_mask_[k][index_[k].at(s)] = 1;
  }

  verify_chain_complex();
}

int SimplicialComplex::count(int k) const {
  if (k < 0 || k > dim_ || simplices_.empty()) return 0;
  return static_cast<int>(simplices_[k].size());
}

int SimplicialComplex::find(const Simplex& sorted) const {
  const int k = static_cast<int>(sorted.size()) - 1;
  if (k < 0 || k > dim_) return -1;
  auto it = index_[k].find(sorted);
  return it == index_[k].end() ? -1 : it->second;
}

int SimplicialComplex::induced_sign(int facet) const {
  for (IncidenceMatrix::InnerIterator it(boundary_[dim_], facet_cofaces_[facet].front()); it; ++it)
    if (it.row() == facet) return it.value();
  throw TopologyError("facet not incident to its coface");
}

void SimplicialComplex::verify_chain_complex() const {
  for (int k = 2; k <= dim_; ++k) {
    IncidenceMatrix prod = boundary_[k - 1] * boundary_[k];
    for (int j = 0; j < prod.outerSize(); ++j)
      for (IncidenceMatrix::InnerIterator it(prod, j); it; ++it)
        if (it.value() != 0)
          throw TopologyError("boundary of boundary is nonzero in degree " + std::to_string(k));
  }
}

}  // namespace ymdec
