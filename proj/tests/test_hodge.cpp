#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "ymdec/boundary.hpp"
#include "ymdec/errors.hpp"
#include "ymdec/hodge.hpp"

using namespace ymdec;
using namespace ymdec::testing;

namespace {

std::vector<RegionMesh> meshes() {
  return {builtin::disk(16),       builtin::disk(64),        builtin::ann8(),   builtin::annulus(12),
          builtin::square(3),      builtin::two_annuli(6),   builtin::tetrahedron(), builtin::cube(2),
          builtin::solid_torus(6), builtin::sphere(),        torus(3)};
}

double rel_norm(const Dec& dec, const Cochain& a, const Cochain& b) {
  const double n = dec.norm(b);
  return dec.norm(a - b) / (n > 0.0 ? n : 1.0);
}

}  // namespace

TEST_CASE("betti oracle examples") {
  CHECK(betti_oracle(builtin::disk(16).complex(), 1) == 0);
  CHECK(betti_oracle(builtin::ann8().complex(), 1) == 1);
  const RegionMesh two = builtin::two_annuli(8);
  CHECK(betti_oracle(two.complex(), 1) == 2);
  CHECK(betti_oracle(two.complex(), 0) == 2);
  CHECK(betti_oracle(builtin::solid_torus(6).complex(), 1) == 1);
  CHECK(betti_oracle(torus(3).complex(), 1) == 2);
}

TEST_CASE("betti oracles agree with floating point ranks") {
  for (const auto& M : meshes()) {
    CAPTURE(M.name());
    for (int k = 0; k <= M.dim(); ++k) {
      CAPTURE(k);
      CHECK(betti_oracle(M.complex(), k) == betti_lu(M.complex(), k));
      CHECK(relative_betti_oracle(M.complex(), k) == relative_betti_lu(M.complex(), k));
    }
  }
}

TEST_CASE("Neumann harmonic dimension equals the Betti number") {
  for (const auto& M : meshes()) {
    CAPTURE(M.name());
    const Dec dec(M);
    for (int k = 0; k <= M.dim(); ++k) {
      CAPTURE(k);
      const HarmonicBasis h = harmonic_neumann_basis(dec, k);
      CHECK(h.basis.dim() == betti_lu(M.complex(), k));
      CHECK(h.max_residual <= 1e-9);
      CHECK(h.basis.orthonormality_defect() <= 1e-10);
    }
  }
}

TEST_CASE("Dirichlet harmonic dimension equals the relative Betti number") {
  for (const auto& M : meshes()) {
    CAPTURE(M.name());
    const Dec dec(M);
    for (int k = 0; k <= M.dim(); ++k) {
      CAPTURE(k);
      const HarmonicBasis h = harmonic_dirichlet_basis(dec, k);
      CHECK(h.basis.dim() == relative_betti_lu(M.complex(), k));
      CHECK(h.max_residual <= 1e-9);
    }
  }
  // The disk has no relative 1-classes: H_1(D, dD) = H^1(D) = 0.
  CHECK(harmonic_dirichlet_basis(Dec(builtin::disk(16)), 1).basis.dim() == 0);
  CHECK(harmonic_dirichlet_basis(Dec(builtin::ann8()), 1).basis.dim() == 1);
}

TEST_CASE("Ann8 harmonic field circulates around the hole") {
  const RegionMesh M = builtin::ann8();
  const Dec dec(M);
  CHECK(harmonic_neumann_basis(dec, 1).basis.dim() == 1);
  const Eigen::VectorXd a = harmonic_neumann_basis(dec, 1).basis.columns.col(0);
  const double inner = holonomy(dec.cochain(1, a), walk(M.complex(), {0, 1, 2, 3})).integral;
  CHECK(std::abs(inner) > 1e-3 * a.cwiseAbs().maxCoeff());
  CHECK(harmonic_neumann_basis(Dec(builtin::disk(16)), 1).basis.dim() == 0);
}

TEST_CASE("corners do not change the harmonic dimensions") {
  const Dec sq(builtin::square(4)), dk(builtin::disk(64));
  for (int k = 0; k <= 1; ++k) {
    CHECK(harmonic_neumann_basis(sq, k).basis.dim() == harmonic_neumann_basis(dk, k).basis.dim());
    CHECK(harmonic_dirichlet_basis(sq, k).basis.dim() == harmonic_dirichlet_basis(dk, k).basis.dim());
  }
}

TEST_CASE("decomposition of pure components") {
  const RegionMesh M = builtin::square(4);
  const Dec dec(M);
  std::mt19937_64 rng(11);
  Eigen::VectorXd f = gaussian(rng, dec.count(0));
  for (int v : dec.boundary_simplices(0)) f(v) = 0.0;
  const Cochain df = dec.d(dec.cochain(0, f));
  const HmfDecomposition h = hmf_decompose(df, dec);
  CHECK(rel_norm(dec, h.exact_dirichlet, df) <= 1e-12);
  CHECK(dec.norm(h.coexact_neumann) <= 1e-12 * dec.norm(df));
  CHECK(dec.norm(h.harmonic_neumann) <= 1e-12 * dec.norm(df));
  CHECK(dec.norm(h.harmonic_exact) <= 1e-12 * dec.norm(df));

  const Dec A(builtin::annulus(12));
  const Cochain hn = A.cochain(1, harmonic_neumann_basis(A, 1).basis.columns.col(0));
  const HmfDecomposition g = hmf_decompose(hn, A);
  CHECK(rel_norm(A, g.harmonic_neumann, hn) <= 1e-12);
  CHECK(A.norm(g.exact_dirichlet) + A.norm(g.coexact_neumann) + A.norm(g.harmonic_exact) <= 1e-12);
}

TEST_CASE("random decompositions are orthogonal, complete and idempotent") {
  std::mt19937_64 rng(12);
  for (const auto& M : meshes()) {
    CAPTURE(M.name());
    const Dec dec(M);
    for (int k = 0; k <= M.dim(); ++k) {
      CAPTURE(k);
      const HmfDecomposer hmf(dec, k);
      for (int t = 0; t < 10; ++t) {
        const Cochain a = dec.cochain(k, gaussian(rng, dec.count(k)));
        const HmfDecomposition h = hmf.decompose(a);
        CHECK(h.residual_norm <= 1e-10 * h.input_norm);
        CHECK(h.max_cross_inner <= 1e-10);
        const Cochain parts[4] = {h.exact_dirichlet, h.coexact_neumann, h.harmonic_neumann, h.harmonic_exact};
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j)
            CHECK(std::abs(dec.inner_product(parts[i], parts[j])) <= 1e-10 * h.input_norm * h.input_norm);
        if (t == 0) {
          for (int i = 0; i < 4; ++i) {
            const HmfDecomposition again = hmf.decompose(parts[i]);
            const Cochain same[4] = {again.exact_dirichlet, again.coexact_neumann, again.harmonic_neumann,
                                     again.harmonic_exact};
            CHECK(dec.norm(same[i] - parts[i]) <= 1e-9 * h.input_norm);
          }
        }
      }
    }
  }
}

TEST_CASE("Dirichlet exact piece vanishes on the boundary") {
  const Dec dec(builtin::cube(2));
  std::mt19937_64 rng(13);
  const HmfDecomposition h = hmf_decompose(dec.cochain(1, gaussian(rng, dec.count(1))), dec);
  for (int e : dec.boundary_simplices(1)) CHECK(std::abs(h.exact_dirichlet.values(e)) <= 1e-12 * h.input_norm);
  CHECK(dec.norm(dec.d(h.harmonic_neumann)) <= 1e-10 * h.input_norm);
  CHECK(dec.norm(dec.d(h.exact_dirichlet)) <= 1e-10 * h.input_norm);
}

TEST_CASE("coclosed decomposition on loops and surfaces") {
  const HypersurfaceMesh loop = builtin::loop(16, 2.0 * M_PI);
  const Dec L(loop);
  const Cochain c = L.cochain(1, 0.8 * loop.metric().primal[1]);
  const CoclosedSplit s = coclosed_decompose(c, L);
  CHECK(L.norm(s.harmonic - c) <= 1e-12 * L.norm(c));
  CHECK(L.norm(s.coexact) <= 1e-12 * L.norm(c));

  // Boundary of the solid torus is a closed torus surface.
  const HypersurfaceMesh T = boundary_complex(builtin::solid_torus(6));
  const Dec D(T);
  std::mt19937_64 rng(14);
  const Cochain beta = D.cochain(2, gaussian(rng, D.count(2)));
  const Cochain phi = D.codifferential(beta);
  const CoclosedSplit t = coclosed_decompose(phi, D);
  CHECK(D.norm(t.harmonic) <= 1e-10 * D.norm(phi));
  CHECK(D.norm(t.coexact - phi) <= 1e-10 * D.norm(phi));
  CHECK(std::abs(D.inner_product(t.harmonic, t.coexact)) <= 1e-12 * D.norm(phi) * D.norm(phi));

  const Cochain bad = D.d(D.cochain(0, gaussian(rng, D.count(0))));
  CHECK_THROWS_AS(coclosed_decompose(bad, D), PreconditionError);
}
