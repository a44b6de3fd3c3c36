#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "ymdec/builtin.hpp"
#include "ymdec/dec.hpp"
#include "ymdec/homology.hpp"
#include "ymdec/mesh.hpp"

namespace ymdec::testing {

inline Eigen::VectorXd gaussian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

inline Eigen::VectorXd integers(std::mt19937_64& rng, Eigen::Index n, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> u(lo, hi);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

inline Eigen::MatrixXd dense(const IncidenceMatrix& m) { return Eigen::MatrixXd(m.cast<double>()); }

// Rank by full-pivot LU in floating point; independent of the mod-p reducer.
inline int lu_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

inline Eigen::MatrixXd boundary_dense(const SimplicialComplex& c, int k) {
  if (k <= 0 || k > c.dim()) return Eigen::MatrixXd(k <= 0 ? 0 : c.count(k - 1), k > c.dim() ? 0 : c.count(k));
  return dense(c.boundary(k));
}

inline int betti_lu(const SimplicialComplex& c, int k) {
  const int rk = k >= 1 ? lu_rank(boundary_dense(c, k)) : 0;
  const int rk1 = k + 1 <= c.dim() ? lu_rank(boundary_dense(c, k + 1)) : 0;
  return c.count(k) - rk - rk1;
}

// Relative homology: keep only interior simplices in every degree.
inline int relative_betti_lu(const SimplicialComplex& c, int k) {
  auto interior = [&c](int j) {
    std::vector<int> idx;
    for (int i = 0; i < c.count(j); ++i)
      if (!c.boundary_mask(j)[i]) idx.push_back(i);
    return idx;
  };
  auto block = [&](int j) -> Eigen::MatrixXd {
    const auto rows = interior(j - 1), cols = interior(j);
    const Eigen::MatrixXd full = boundary_dense(c, j);
    Eigen::MatrixXd b(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t q = 0; q < cols.size(); ++q) b(r, q) = full(rows[r], cols[q]);
    return b;
  };
  const int n = static_cast<int>(interior(k).size());
  const int rk = k >= 1 ? lu_rank(block(k)) : 0;
  const int rk1 = k + 1 <= c.dim() ? lu_rank(block(k + 1)) : 0;
  return n - rk - rk1;
}

// Connected components of the graph of 1-simplices (isolated vertices count).
inline int vertex_components(const SimplicialComplex& c) {
  std::vector<int> parent(c.count(0));
  for (int i = 0; i < c.count(0); ++i) parent[i] = i;
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : c.simplices(1)) parent[find(e[0])] = find(e[1]);
  int n = 0;
  for (int i = 0; i < c.count(0); ++i) n += find(i) == i;
  return n;
}

// Closed vertex walk to a signed edge chain.
inline Cycle walk(const SimplicialComplex& c, const std::vector<int>& vertices) {
  Cycle g;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const int a = vertices[i], b = vertices[(i + 1) % vertices.size()];
    const int e = c.find({std::min(a, b), std::max(a, b)});
    g.edges.push_back({e, a < b ? 1 : -1});
  }
  return g;
}

// Shoelace area of a polygon given by its vertex coordinates in order.
inline double shoelace(const std::vector<Eigen::Vector2d>& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& u = p[i];
    const auto& v = p[(i + 1) % p.size()];
    a += u.x() * v.y() - v.x() * u.y();
  }
  return 0.5 * std::abs(a);
}

inline double regular_polygon_area(int N, double r = 1.0) {
  std::vector<Eigen::Vector2d> p;
  for (int i = 0; i < N; ++i) {
    const double t = 2.0 * M_PI * i / N;
    p.emplace_back(r * std::cos(t), r * std::sin(t));
  }
  return shoelace(p);
}

inline double regular_polygon_perimeter(int N, double r = 1.0) { return 2.0 * N * r * std::sin(M_PI / N); }

// Torus from a rectangle by gluing west-east, then south-north.
inline RegionMesh torus(int n) {
  const RegionMesh R = builtin::rectangle(n, n, 1.0, 1.0);
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::map<int, int> we;
  for (int j = 0; j <= n; ++j) we[id(0, j)] = id(n, j);
  const GlueResult A = glue_with_map(R, "west", "east", we);
  std::map<int, int> sn;
  for (int i = 0; i <= n; ++i) sn[A.vertex_map[id(i, 0)]] = A.vertex_map[id(i, n)];
  return glue(A.mesh, "south", "north", sn).renamed("torus");
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace ymdec::testing
