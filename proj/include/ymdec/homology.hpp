#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ymdec/complex.hpp"

namespace ymdec {

// Sparse vector over F_p, p = 2^61 - 1, sorted by index.
using ModPVector = std::vector<std::pair<int, std::uint64_t>>;

// Incremental column reduction over F_p.
class ModPReducer {
 public:
  // Reduces `v` against the stored pivots; stores it and returns true when independent.
  bool add(ModPVector v);
  int rank() const { return static_cast<int>(pivots_.size()); }

  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;
  static std::uint64_t from_int(long long x);

 private:
  std::vector<std::pair<int, ModPVector>> pivots_;  // sorted by pivot index
  const ModPVector* find(int pivot) const;
};

// Rank of an integer matrix over F_p (equal to the rational rank barring huge torsion).
int rank_mod_p(const IncidenceMatrix& m);
// Rank of the submatrix on the given rows and columns.
int rank_mod_p(const IncidenceMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols);

// dim H_k from integer boundary ranks; no metric involved.
int betti_oracle(const SimplicialComplex& c, int k);
// dim H_k(M, dM): boundary simplices deleted from the chain complex.
int relative_betti_oracle(const SimplicialComplex& c, int k);

// Signed edge list: (edge index, coefficient); +1 runs from the lower to the higher vertex id.
struct Cycle {
  std::vector<std::pair<int, int>> edges;
};

bool is_cycle(const SimplicialComplex& c, const Cycle& g);

// Basis of H_1 made of fundamental cycles of a BFS forest (rooted at the smallest vertex of
// each component), sorted by length then edge list and accepted greedily when independent
// modulo boundaries.
std::vector<Cycle> homology_generators(const SimplicialComplex& c);

}  // namespace ymdec
