#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "ymdec/errors.hpp"

using namespace ymdec;
using namespace ymdec::testing;

namespace {

std::vector<RegionMesh> meshes() {
  return {builtin::from_spec("tri1"), builtin::disk(16),   builtin::ann8(),   builtin::square(3),
          builtin::two_annuli(6),     builtin::tetrahedron(), builtin::cube(2), builtin::solid_torus(6),
          builtin::sphere()};
}

double value_on(const Dec& dec, const Cochain& c, const Simplex& s) {
  return c.values(dec.complex().find(s));
}

}  // namespace

TEST_CASE("d on Tri1 is head minus tail") {
  const Dec dec(builtin::from_spec("tri1"));
  const Cochain f = dec.cochain(0, Eigen::Vector3d(0, 1, 2));
  const Cochain df = dec.d(f);
  CHECK(value_on(dec, df, {0, 1}) == 1.0);
  CHECK(value_on(dec, df, {1, 2}) == 1.0);
  CHECK(value_on(dec, df, {0, 2}) == 2.0);
  CHECK(dec.d(dec.cochain(0, Eigen::Vector3d::Constant(4.0))).values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("d of d vanishes exactly") {
  std::mt19937_64 rng(1);
  for (const auto& M : meshes()) {
    CAPTURE(M.name());
    const Dec dec(M);
    for (int k = 0; k + 2 <= dec.dim(); ++k) {
      const Cochain a = dec.cochain(k, integers(rng, dec.count(k)));
      CHECK(dec.d(dec.d(a)).values.cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("star on Tri1") {
  const Dec dec(builtin::from_spec("tri1"));
  const Cochain unit = dec.cochain(2, Eigen::VectorXd::Ones(1));
  CHECK(dec.star(unit).values(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(dec.star(dec.zero(2)).values.cwiseAbs().maxCoeff() == 0.0);
  std::mt19937_64 rng(2);
  for (int k = 0; k <= 2; ++k) {
    const Cochain a = dec.cochain(k, gaussian(rng, dec.count(k)));
    CHECK((dec.unstar(dec.star(a)).values - a.values).norm() <= 1e-15 * a.values.norm());
  }
  CHECK(dec.stars_positive());
}

TEST_CASE("codifferential") {
  const HypersurfaceMesh loop = builtin::loop(12, 2.0 * M_PI);
  const Dec L(loop);
  Eigen::VectorXd c = 0.7 * loop.metric().primal[1];
  CHECK(L.codifferential(L.cochain(1, c)).values.cwiseAbs().maxCoeff() <= 1e-14);

  // On a closed complex the codifferential of df is the graph Laplacian weighted by the stars.
  const Dec S(builtin::sphere());
  std::mt19937_64 rng(3);
  const Eigen::VectorXd f = gaussian(rng, S.count(0));
  const Eigen::MatrixXd D0 = Eigen::MatrixXd(S.d_matrix(0));
  const Eigen::VectorXd lap =
      S.star_weights(0).cwiseInverse().asDiagonal() * (D0.transpose() * (S.star_weights(1).asDiagonal() * (D0 * f)));
  CHECK((S.codifferential(S.d(S.cochain(0, f))).values - lap).norm() <= 1e-13 * lap.norm());
  CHECK(S.codifferential(S.zero(1)).values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("inner product") {
  const Dec dec(builtin::from_spec("tri1"));
  CHECK(dec.inner_product(dec.cochain(0, Eigen::Vector3d(1, 0, 0)), dec.cochain(0, Eigen::Vector3d(0, 1, 0))) == 0.0);

  const HypersurfaceMesh loop = builtin::loop(20, 2.0 * M_PI);
  const Dec L(loop);
  const double c = 0.3;
  const Cochain phi = L.cochain(1, c * loop.metric().primal[1]);
  CHECK(L.inner_product(phi, phi) == doctest::Approx(2.0 * M_PI * c * c).epsilon(1e-14));

  std::mt19937_64 rng(4);
  for (const auto& M : meshes()) {
    const Dec D(M);
    for (int k = 0; k <= D.dim(); ++k)
      for (int t = 0; t < 5; ++t) {
        const Cochain a = D.cochain(k, gaussian(rng, D.count(k)));
        const Cochain b = D.cochain(k, gaussian(rng, D.count(k)));
        CHECK(D.inner_product(a, b) == D.inner_product(b, a));
        CHECK(D.inner_product(a, a) > 0.0);
      }
  }
}

TEST_CASE("host and degree mismatches are rejected") {
  const Dec a(builtin::disk(8)), b(builtin::disk(8));
  CHECK_THROWS_AS(a.inner_product(a.zero(1), b.zero(1)), PreconditionError);
  CHECK_THROWS_AS(a.inner_product(a.zero(1), a.zero(0)), PreconditionError);
  CHECK_THROWS_AS(a.d(a.zero(2)), PreconditionError);
  CHECK_THROWS_AS(a.codifferential(a.zero(0)), PreconditionError);
}

TEST_CASE("adjointness defect vanishes") {
  std::mt19937_64 rng(5);
  for (const auto& M : meshes()) {
    CAPTURE(M.name());
    const Dec dec(M);
    for (int k = 1; k <= dec.dim(); ++k)
      for (int t = 0; t < 20; ++t) {
        const Cochain beta = dec.cochain(k - 1, gaussian(rng, dec.count(k - 1)));
        const Cochain alpha = dec.cochain(k, gaussian(rng, dec.count(k)));
        CHECK(dec.adjointness(beta, alpha).relative() <= 1e-13);
      }
    CHECK(dec.adjointness_defect(dec.zero(0), dec.zero(1)) == 0.0);
  }
}

TEST_CASE("Tri1 adjointness by direct expansion") {
  const Dec dec(builtin::from_spec("tri1"));
  std::mt19937_64 rng(6);
  const Eigen::VectorXd f = gaussian(rng, 3), a = gaussian(rng, 3);
  const Eigen::MatrixXd D0 = Eigen::MatrixXd(dec.d_matrix(0));
  const Eigen::VectorXd S0 = dec.star_weights(0), S1 = dec.star_weights(1);
  // Every vertex of Tri1 is on the boundary: the codifferential vanishes and the whole
  // pairing sits in the boundary term.
  const double lhs = (D0 * f).dot(S1.cwiseProduct(a));
  const Eigen::VectorXd flux = D0.transpose() * S1.cwiseProduct(a);
  CHECK(dec.codifferential(dec.cochain(1, a)).values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(dec.boundary_pairing(dec.cochain(0, f), dec.cochain(1, a)) == doctest::Approx(f.dot(flux)).epsilon(1e-14));
  CHECK(std::abs(dec.adjointness_defect(dec.cochain(0, f), dec.cochain(1, a))) <= 1e-13 * std::abs(lhs) + 1e-15);
}

TEST_CASE("closed complexes have no boundary term") {
  const Dec dec(builtin::sphere());
  std::mt19937_64 rng(7);
  const Cochain f = dec.cochain(0, gaussian(rng, dec.count(0)));
  const Cochain a = dec.cochain(1, gaussian(rng, dec.count(1)));
  CHECK(dec.boundary_pairing(f, a) == 0.0);
  CHECK(dec.neumann_trace(a).values.cwiseAbs().maxCoeff() == 0.0);
  const double lhs = dec.inner_product(dec.d(f), a);
  CHECK(std::abs(lhs - dec.inner_product(f, dec.codifferential(a))) <= 1e-13 * std::abs(lhs));
}
