#include "ymdec/homology.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "ymdec/errors.hpp"

namespace ymdec {

namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;
constexpr u64 P = ModPReducer::kPrime;

u64 mulmod(u64 a, u64 b) {
  u128 r = static_cast<u128>(a) * b;
  u64 lo = static_cast<u64>(r & P);
  u64 hi = static_cast<u64>(r >> 61);
  u64 s = lo + hi;
  if (s >= P) s -= P;
  if (s >= P) s -= P;
  return s;
}

u64 powmod(u64 a, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

u64 inverse(u64 a) { return powmod(a, P - 2); }

// a - c * b, both sorted.
ModPVector axpy(const ModPVector& a, u64 c, const ModPVector& b) {
  ModPVector out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else {
      u64 sub = mulmod(c, b[j].second);
      u64 base = 0;
      int idx = b[j].first;
      if (i < a.size() && a[i].first == idx) base = a[i++].second;
      ++j;
      u64 v = base >= sub ? base - sub : base + P - sub;
      if (v) out.emplace_back(idx, v);
    }
  }
  return out;
}

}  // namespace

u64 ModPReducer::from_int(long long x) {
  long long m = x % static_cast<long long>(P);
  if (m < 0) m += static_cast<long long>(P);
  return static_cast<u64>(m);
}

const ModPVector* ModPReducer::find(int pivot) const {
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), pivot,
                             [](const auto& e, int p) { return e.first < p; });
  return (it != pivots_.end() && it->first == pivot) ? &it->second : nullptr;
}

bool ModPReducer::add(ModPVector v) {
  std::sort(v.begin(), v.end());
  while (!v.empty()) {
    const int low = v.back().first;
    const ModPVector* p = find(low);
    if (!p) {
      u64 inv = inverse(v.back().second);
      for (auto& [i, x] : v) x = mulmod(x, inv);
      auto it = std::lower_bound(pivots_.begin(), pivots_.end(), low,
                                 [](const auto& e, int q) { return e.first < q; });
      pivots_.insert(it, {low, std::move(v)});
      return true;
    }
    v = axpy(v, v.back().second, *p);
  }
  return false;
}

int rank_mod_p(const IncidenceMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<int> row_pos(m.rows(), -1);
  for (std::size_t r = 0; r < rows.size(); ++r) row_pos[rows[r]] = static_cast<int>(r);
  ModPReducer red;
  for (int c : cols) {
    ModPVector v;
    for (IncidenceMatrix::InnerIterator it(m, c); it; ++it)
      if (row_pos[it.row()] >= 0 && it.value() != 0)
        v.emplace_back(row_pos[it.row()], ModPReducer::from_int(it.value()));
    red.add(std::move(v));
  }
  return red.rank();
}

int rank_mod_p(const IncidenceMatrix& m) {
  std::vector<int> rows(m.rows()), cols(m.cols());
  for (int i = 0; i < m.rows(); ++i) rows[i] = i;
  for (int j = 0; j < m.cols(); ++j) cols[j] = j;
  return rank_mod_p(m, rows, cols);
}

int betti_oracle(const SimplicialComplex& c, int k) {
  if (k < 0 || k > c.dim()) return 0;
  const int r_k = k >= 1 ? rank_mod_p(c.boundary(k)) : 0;
  const int r_k1 = k + 1 <= c.dim() ? rank_mod_p(c.boundary(k + 1)) : 0;
  return c.count(k) - r_k - r_k1;
}

int relative_betti_oracle(const SimplicialComplex& c, int k) {
  if (k < 0 || k > c.dim()) return 0;
  auto interior = [&c](int j) {
    std::vector<int> out;
    if (j < 0 || j > c.dim()) return out;
    for (int i = 0; i < c.count(j); ++i)
      if (!c.boundary_mask(j)[i]) out.push_back(i);
    return out;
  };
  const auto ck = interior(k);
  const int r_k = k >= 1 ? rank_mod_p(c.boundary(k), interior(k - 1), ck) : 0;
  const int r_k1 = k + 1 <= c.dim() ? rank_mod_p(c.boundary(k + 1), ck, interior(k + 1)) : 0;
  return static_cast<int>(ck.size()) - r_k - r_k1;
}

bool is_cycle(const SimplicialComplex& c, const Cycle& g) {
  if (c.dim() < 1) return false;
  std::map<int, long long> acc;
  for (const auto& [e, coef] : g.edges) {
    if (e < 0 || e >= c.count(1)) return false;
    const auto& s = c.simplex(1, e);
    acc[s[1]] += coef;
    acc[s[0]] -= coef;
  }
  for (const auto& [v, x] : acc)
    if (x != 0) return false;
  return true;
}

std::vector<Cycle> homology_generators(const SimplicialComplex& c) {
  const int b1 = betti_oracle(c, 1);
  std::vector<Cycle> out;
  if (b1 == 0) return out;
  ModPReducer red;
  if (c.dim() >= 2) {
    const auto& d2 = c.boundary(2);
    for (int j = 0; j < d2.cols(); ++j) {
      ModPVector v;
      for (IncidenceMatrix::InnerIterator it(d2, j); it; ++it)
        v.emplace_back(static_cast<int>(it.row()), ModPReducer::from_int(it.value()));
      red.add(std::move(v));
    }
  }
  const int nv = c.num_vertices();
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbor, edge)
  for (int e = 0; e < c.count(1); ++e) {
    const auto& s = c.simplex(1, e);
    adj[s[0]].emplace_back(s[1], e);
    adj[s[1]].emplace_back(s[0], e);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  // BFS forest rooted at the smallest vertex of each component.
  std::vector<int> parent(nv, -1), parent_edge(nv, -1), depth(nv, -1);
  std::vector<char> tree_edge(c.count(1), 0);
  for (int root = 0; root < nv; ++root) {
    if (depth[root] >= 0) continue;
    depth[root] = 0;
    std::deque<int> q{root};
    while (!q.empty()) {
      const int x = q.front();
      q.pop_front();
      for (const auto& [y, edge] : adj[x]) {
        if (depth[y] >= 0) continue;
        depth[y] = depth[x] + 1;
        parent[y] = x;
        parent_edge[y] = edge;
        tree_edge[edge] = 1;
        q.push_back(y);
      }
    }
  }
  // Fundamental cycle of each non-tree edge u -> v, closed through the tree.
  std::vector<Cycle> candidates;
  for (int e = 0; e < c.count(1); ++e) {
    if (tree_edge[e]) continue;
    const int u = c.simplex(1, e)[0], v = c.simplex(1, e)[1];
    Cycle g;
    g.edges.emplace_back(e, 1);
    std::vector<std::pair<int, int>> down;  // u side, walked upward then reversed
    int a = v, b = u;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        g.edges.emplace_back(parent_edge[a], a < parent[a] ? 1 : -1);  // a -> parent(a)
        a = parent[a];
      } else {
        down.emplace_back(parent_edge[b], parent[b] < b ? 1 : -1);  // parent(b) -> b
        b = parent[b];
      }
    }
    std::reverse(down.begin(), down.end());
    g.edges.insert(g.edges.end(), down.begin(), down.end());
    candidates.push_back(std::move(g));
  }
  auto key = [](const Cycle& g) {
    std::vector<std::pair<int, int>> k = g.edges;
    std::sort(k.begin(), k.end());
    return k;
  };
  std::stable_sort(candidates.begin(), candidates.end(), [&](const Cycle& a, const Cycle& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return key(a) < key(b);
  });
  for (const auto& g : candidates) {
    ModPVector v;
    for (const auto& [e, coef] : g.edges) v.emplace_back(e, ModPReducer::from_int(coef));
    std::sort(v.begin(), v.end());
    if (red.add(std::move(v))) out.push_back(g);
    if (static_cast<int>(out.size()) == b1) break;
  }
  if (static_cast<int>(out.size()) != b1) throw NumericalError("could not complete a homology basis");
  return out;
}

}  // namespace ymdec
