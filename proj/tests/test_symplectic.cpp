#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "ymdec/errors.hpp"
#include "ymdec/symplectic.hpp"
#include "ymdec/ym2d.hpp"

using namespace ymdec;
using namespace ymdec::testing;

namespace {

using HostPtr = std::shared_ptr<const HypersurfaceMesh>;

HostPtr host_of(const RegionMesh& M) { return std::make_shared<const HypersurfaceMesh>(boundary_complex(M)); }

BoundaryDatum random_datum(std::mt19937_64& rng, const HostPtr& h) {
  const int m = h->complex().count(1);
  return make_datum(h, gaussian(rng, m), gaussian(rng, m));
}

Eigen::MatrixXd unit_columns(int m, const std::vector<int>& idx) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) A(idx[j], static_cast<Eigen::Index>(j)) = 1.0;
  return A;
}

}  // namespace

TEST_CASE("omega on a circle of length 2 pi") {
  const HostPtr loop = std::make_shared<const HypersurfaceMesh>(builtin::loop(32, 2.0 * M_PI));
  const BoundaryDatum a = constant_datum(loop, {1.0, 0.0});
  const BoundaryDatum b = constant_datum(loop, {0.0, 1.0});
  CHECK(std::abs(omega(a, b)) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(std::abs(bracket(a, b)) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(omega(a, a) == 0.0);
  CHECK(omega(b, a) == -omega(a, b));
  CHECK(bracket(a, a) == 0.0);
}

TEST_CASE("bracket identity and bilinearity on random pairs") {
  std::mt19937_64 rng(31);
  for (const auto& M : {builtin::disk(16), builtin::ann8(), builtin::square(3), builtin::tetrahedron()}) {
    CAPTURE(M.name());
    const HostPtr h = host_of(M);
    for (int t = 0; t < 20; ++t) {
      const BoundaryDatum a = random_datum(rng, h), b = random_datum(rng, h), c = random_datum(rng, h);
      CHECK(bracket_identity(a, b).relative() <= 1e-13);
      CHECK(omega(a, b) == -omega(b, a));
      CHECK(omega(a, a) == 0.0);
      const double x = 0.7, y = -1.3;
      const BoundaryDatum lin =
          make_datum(h, x * a.phi.values + y * c.phi.values, x * a.phi_dot.values + y * c.phi_dot.values);
      const double expect = x * omega(a, b) + y * omega(c, b);
      const double scale = std::abs(x * omega(a, b)) + std::abs(y * omega(c, b)) + 1.0;
      CHECK(std::abs(omega(lin, b) - expect) <= 1e-13 * scale);
      const BoundaryDatum still = make_datum(h, a.phi.values, Eigen::VectorXd::Zero(a.phi.values.size()));
      const BoundaryDatum other = make_datum(h, b.phi.values, Eigen::VectorXd::Zero(b.phi.values.size()));
      CHECK(bracket(still, other) == 0.0);
    }
  }
}

TEST_CASE("host mismatch is rejected") {
  std::mt19937_64 rng(32);
  const BoundaryDatum a = random_datum(rng, host_of(builtin::disk(8)));
  const BoundaryDatum b = random_datum(rng, host_of(builtin::disk(8)));
  CHECK_THROWS_AS(omega(a, b), PreconditionError);
  CHECK_THROWS_AS(bracket(a, b), PreconditionError);
}

TEST_CASE("reversing the hypersurface negates omega and bracket") {
  std::mt19937_64 rng(33);
  const HostPtr h = host_of(builtin::ann8());
  for (int t = 0; t < 10; ++t) {
    const BoundaryDatum a = random_datum(rng, h), b = random_datum(rng, h);
    const BoundaryDatum ra = reversed(a);
    const BoundaryDatum rb = make_datum(ra.host, b.phi.values, b.phi_dot.values);
    CHECK(omega(ra, rb) == -omega(a, b));
    CHECK(bracket(ra, rb) == -bracket(a, b));
  }
}

TEST_CASE("face factorization") {
  std::mt19937_64 rng(34);
  for (const auto& M : {builtin::ann8(), builtin::square(4), builtin::disk(12), builtin::cube(2)}) {
    CAPTURE(M.name());
    const HostPtr h = host_of(M);
    for (int t = 0; t < 20; ++t) {
      const FaceFactorization f = face_factorization_check(*h, random_datum(rng, h), random_datum(rng, h));
      CHECK(f.relative() <= 1e-12);
      CHECK(f.per_face.size() == M.labels().size());
    }
  }
  const HostPtr ann = host_of(builtin::ann8());
  const BoundaryDatum a = random_datum(rng, ann), b = random_datum(rng, ann);
  const FaceFactorization f = face_factorization_check(*ann, a, b);
  double independent = 0.0;
  for (const std::string label : {"inner", "outer"}) {
    const HostPtr face = std::make_shared<const HypersurfaceMesh>(extract_face(*ann, label));
    independent += bracket(restrict_datum(a, face), restrict_datum(b, face));
  }
  CHECK(f.total == doctest::Approx(independent).epsilon(1e-12));
  CHECK(f.total == doctest::Approx(bracket(a, b)).epsilon(1e-14));
}

TEST_CASE("disjoint union adds omega") {
  std::mt19937_64 rng(35);
  const RegionMesh A = builtin::ann8(), B = builtin::disk(10);
  const RegionMesh U = disjoint_union(A, B, "a_", "b_", "union");
  const HostPtr hu = host_of(U), ha = host_of(A), hb = host_of(B);
  const BoundaryDatum x = random_datum(rng, hu), y = random_datum(rng, hu);
  double parts = 0.0;
  for (const auto& prefix : {std::string("a_"), std::string("b_")}) {
    const HypersurfaceMesh& S = *hu;
    std::vector<int> tops;
    for (int t = 0; t < S.complex().count(1); ++t)
      if (S.label(t).rfind(prefix, 0) == 0) tops.push_back(t);
    const HostPtr part = std::make_shared<const HypersurfaceMesh>(S.sub(tops));
    parts += omega(restrict_datum(x, part), restrict_datum(y, part));
  }
  CHECK(omega(x, y) == doctest::Approx(parts).epsilon(1e-14));
  CHECK(hu->complex().count(1) == ha->complex().count(1) + hb->complex().count(1));
}

TEST_CASE("standard symplectic spaces") {
  const SymplecticSpace R2 = SymplecticSpace::standard(1);
  CHECK(R2.antisymmetry_defect() == 0.0);
  const Subspace e1 = make_subspace(R2, unit_columns(2, {0}));
  const Subspace c = symplectic_complement(e1, R2);
  CHECK(c.dim() == 1);
  CHECK(max_containment_angle(c, e1) <= 1e-14);
  CHECK(is_lagrangian(e1, R2).lagrangian);

  const Subspace whole = make_subspace(R2, Eigen::MatrixXd::Identity(2, 2));
  CHECK(symplectic_complement(whole, R2).dim() == 0);
  const Subspace none = make_subspace(R2, Eigen::MatrixXd::Zero(2, 0));
  CHECK(symplectic_complement(none, R2).dim() == 2);

  const SymplecticSpace R4 = SymplecticSpace::standard(2);
  const LagrangianDiagnostics ee = is_lagrangian(make_subspace(R4, unit_columns(4, {0, 1})), R4);
  CHECK(ee.isotropic);
  CHECK(ee.coisotropic);
  CHECK(ee.lagrangian);
  CHECK(ee.dim_complement == 2);
  const LagrangianDiagnostics ef = is_lagrangian(make_subspace(R4, unit_columns(4, {0, 2})), R4);
  CHECK_FALSE(ef.isotropic);
  CHECK_FALSE(ef.lagrangian);
  const LagrangianDiagnostics single = is_lagrangian(make_subspace(R4, unit_columns(4, {0})), R4);
  CHECK(single.isotropic);
  CHECK_FALSE(single.coisotropic);
  const LagrangianDiagnostics big = is_lagrangian(make_subspace(R4, unit_columns(4, {0, 1, 2})), R4);
  CHECK_FALSE(big.isotropic);
  CHECK(big.coisotropic);
}

TEST_CASE("kernel of a degenerate form is isotropic") {
  // omega on R^3 with e3 in the kernel.
  Eigen::MatrixXd om = Eigen::MatrixXd::Zero(3, 3);
  om(0, 1) = 1.0;
  om(1, 0) = -1.0;
  const SymplecticSpace W = SymplecticSpace::make(om, Eigen::VectorXd::Ones(3), Eigen::MatrixXd::Identity(3, 3));
  const Subspace all = make_subspace(W, Eigen::MatrixXd::Identity(3, 3));
  const Subspace ker = symplectic_complement(all, W);
  CHECK(ker.dim() == 1);
  CHECK(std::abs(ker.columns(2, 0)) == doctest::Approx(1.0));
  CHECK(is_isotropic(ker, W).isotropic);
}

TEST_CASE("boundary spaces") {
  const HypersurfaceMesh S = boundary_complex(builtin::annulus(8));
  const SymplecticSpace B = SymplecticSpace::boundary(S);
  CHECK(B.ambient_dim() == 2 * S.complex().count(1));
  CHECK(B.antisymmetry_defect() <= 1e-13);
  CHECK(B.restricted_rank(1e-8).rank == B.dim());

  // Gauge fixed pairs on a closed boundary: the restricted form is nondegenerate.
  for (const auto& M : {builtin::disk(12), builtin::ann8(), builtin::tetrahedron(), builtin::cube(2)}) {
    CAPTURE(M.name());
    const HypersurfaceMesh H = boundary_complex(M);
    const SymplecticSpace G = SymplecticSpace::gauge_fixed(H);
    const RankInfo r = G.restricted_rank(1e-8);
    CHECK(r.rank == G.dim());
    CHECK(G.dim() % 2 == 0);
    // Coclosed 1-cochains: count(1) - rank d_0 = count(1) - (count(0) - b0).
    const int coclosed = H.complex().count(1) - (H.complex().count(0) - betti_lu(H.complex(), 0));
    CHECK(G.dim() == 2 * coclosed);
    CHECK(G.basis.rows() == G.ambient_dim());
  }
}
