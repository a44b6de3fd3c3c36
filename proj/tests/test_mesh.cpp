#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "support.hpp"
#include "ymdec/errors.hpp"
#include "ymdec/mesh_io.hpp"

using namespace ymdec;
using namespace ymdec::testing;

namespace {

const char* kTri1 = "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n";

bool boundary_squared_zero(const SimplicialComplex& c) {
  for (int k = 2; k <= c.dim(); ++k) {
    const IncidenceMatrix p = c.boundary(k - 1) * c.boundary(k);
    for (int j = 0; j < p.outerSize(); ++j)
      for (IncidenceMatrix::InnerIterator it(p, j); it; ++it)
        if (it.value() != 0) return false;
  }
  return true;
}

std::vector<RegionMesh> builtins() {
  return {builtin::disk(16), builtin::annulus(8), builtin::ann8(),       builtin::square(3),
          builtin::strip(4), builtin::two_annuli(6), builtin::two_squares(), builtin::tetrahedron(),
          builtin::cube(2),  builtin::solid_torus(6), builtin::sphere()};
}

}  // namespace

TEST_CASE("load Tri1 from OFF text") {
  const RegionMesh M = parse_off(kTri1, "Tri1", nullptr);
  CHECK(M.name() == "Tri1");
  CHECK(M.dim() == 2);
  CHECK(M.complex().boundary_facets().size() == 3);
  CHECK(M.labels() == std::vector<std::string>{"boundary"});
}

TEST_CASE("OFF input errors") {
  CHECK_THROWS_AS(parse_off("OFF\n3 2 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n3 0 1 2\n", "dup", nullptr), TopologyError);
  CHECK_THROWS_AS(parse_off("PLY\n", "bad", nullptr), ParseError);
  CHECK_THROWS_AS(parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n", "short", nullptr), ParseError);
  CHECK_THROWS_AS(parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n", "range", nullptr), ParseError);
  CHECK_THROWS_AS(load_off("/nonexistent/mesh.off"), ParseError);
  // Two triangles sharing an edge with the same induced direction.
  CHECK_THROWS_AS(parse_off("OFF\n4 2 0\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n3 0 1 2\n3 1 2 3\n", "flip", nullptr),
                  OrientationError);
  // Three triangles on one edge.
  CHECK_THROWS_AS(
      parse_off("OFF\n5 3 0\n0 0 0\n1 0 0\n0 1 0\n0 -1 0\n1 1 1\n3 0 1 2\n3 1 0 3\n3 0 1 4\n", "fan", nullptr),
      TopologyError);
}

TEST_CASE("label sidecar") {
  std::map<Simplex, std::string> labels = {{{0, 1}, "south"}, {{1, 2}, "hyp"}};
  CHECK_THROWS_AS(parse_off(kTri1, "Tri1", &labels), TopologyError);
  labels[{0, 2}] = "west";
  const RegionMesh M = parse_off(kTri1, "Tri1", &labels);
  CHECK(M.labels() == std::vector<std::string>{"hyp", "south", "west"});
  CHECK(M.corners().size() == 3);

  const auto dir = std::filesystem::temp_directory_path() / "ymdec_test_mesh";
  std::filesystem::create_directories(dir);
  const std::string off = (dir / "tri.off").string(), side = (dir / "tri.labels.json").string();
  save_off(M, off);
  write_label_sidecar(M, side);
  const RegionMesh R = load_off(off, side);
  CHECK(R.labels() == M.labels());
  CHECK(R.complex().count(1) == 3);

  std::ofstream(dir / "broken.json") << "{\"labels\": [1, 2]}";
  CHECK_THROWS_AS(load_off(off, (dir / "broken.json").string()), ParseError);
}

TEST_CASE("Ann8 has two labeled faces and exact boundary of boundary") {
  const RegionMesh M = builtin::ann8();
  CHECK(M.labels() == std::vector<std::string>{"inner", "outer"});
  CHECK(M.complex().count(2) == 8);
  const Eigen::MatrixXd p = boundary_dense(M.complex(), 1) * boundary_dense(M.complex(), 2);
  CHECK(p.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("boundary of boundary vanishes on every builtin") {
  for (const auto& M : builtins()) {
    CAPTURE(M.name());
    CHECK(boundary_squared_zero(M.complex()));
    const HypersurfaceMesh S = boundary_complex(M);
    if (!S.empty()) CHECK(boundary_squared_zero(S.complex()));
  }
}

TEST_CASE("boundary_complex") {
  const RegionMesh tri = builtin::from_spec("tri1");
  const HypersurfaceMesh S = boundary_complex(tri);
  CHECK(S.complex().count(1) == 3);
  CHECK(S.is_closed());

  const HypersurfaceMesh A = boundary_complex(builtin::ann8());
  CHECK(A.is_closed());
  CHECK(vertex_components(A.complex()) == 2);

  const HypersurfaceMesh T = boundary_complex(builtin::tetrahedron());
  CHECK(T.dim() == 2);
  CHECK(T.complex().count(2) == 4);
  CHECK(T.is_closed());

  CHECK(boundary_complex(builtin::sphere()).empty());
}

TEST_CASE("extract_face") {
  const HypersurfaceMesh A = boundary_complex(builtin::ann8());
  const HypersurfaceMesh outer = extract_face(A, "outer");
  CHECK(outer.complex().count(1) == 4);
  CHECK(outer.is_closed());
  CHECK(vertex_components(outer.complex()) == 1);

  const HypersurfaceMesh south = extract_face(boundary_complex(builtin::square(2)), "south");
  CHECK(south.complex().count(1) == 2);
  CHECK_FALSE(south.is_closed());
  const auto& ends = south.complex().boundary_facets();
  REQUIRE(ends.size() == 2);
  std::set<int> corners;
  for (int v : ends) corners.insert(south.ambient_index(0)[v]);
  CHECK(corners == std::set<int>{0, 2});  // (0,0) and (1,0) in the 2x2 grid

  CHECK_THROWS_AS(extract_face(A, "nowhere"), PreconditionError);
}

TEST_CASE("faces partition the boundary facets") {
  for (const auto& M : builtins()) {
    CAPTURE(M.name());
    const HypersurfaceMesh S = boundary_complex(M);
    if (S.empty()) continue;
    std::multiset<int> seen;
    for (const auto& label : M.labels()) {
      const HypersurfaceMesh F = extract_face(S, label);
      for (int t : F.ambient_index(F.dim())) seen.insert(t);
    }
    const auto& facets = M.complex().boundary_facets();
    CHECK(seen == std::multiset<int>(facets.begin(), facets.end()));
  }
}

TEST_CASE("corner strata are label intersections") {
  const RegionMesh M = builtin::square(2);
  const auto& corners = M.corners();
  CHECK(corners.size() == 4);
  for (const auto& [key, verts] : corners) {
    CAPTURE(key.first + "/" + key.second);
    CHECK(verts.size() == 1);
  }
  CHECK(builtin::disk(8).corners().empty());
}

TEST_CASE("gluing two squares gives a 4-triangle rectangle") {
  const auto g = builtin::two_squares_preset();
  const RegionMesh R = glue(g.mesh, g.face_a, g.face_b, g.matching);
  CHECK(R.complex().count(2) == 4);
  CHECK(R.complex().count(0) == 6);
  CHECK(boundary_squared_zero(R.complex()));
  CHECK(betti_lu(R.complex(), 0) == 1);
  CHECK(betti_lu(R.complex(), 1) == 0);
}

TEST_CASE("gluing a strip end to end gives an annulus") {
  const auto g = builtin::strip_preset(3);
  CHECK(betti_lu(g.mesh.complex(), 1) == 0);
  const RegionMesh R = glue(g.mesh, g.face_a, g.face_b, g.matching);
  CHECK(betti_lu(R.complex(), 1) == 1);
  CHECK(betti_oracle(R.complex(), 1) == 1);
  CHECK(boundary_squared_zero(R.complex()));
  const auto labels = R.labels();
  CHECK(std::find(labels.begin(), labels.end(), "west") == labels.end());
  CHECK(std::find(labels.begin(), labels.end(), "south") != labels.end());
}

TEST_CASE("glued boundary is the old boundary minus both faces") {
  for (const auto& g : {builtin::strip_preset(3), builtin::two_squares_preset()}) {
    const HypersurfaceMesh S = boundary_complex(g.mesh);
    const int glued_facets = extract_face(S, g.face_a).complex().count(1) + extract_face(S, g.face_b).complex().count(1);
    const RegionMesh R = glue(g.mesh, g.face_a, g.face_b, g.matching);
    CHECK(static_cast<int>(R.complex().boundary_facets().size()) ==
          static_cast<int>(g.mesh.complex().boundary_facets().size()) - glued_facets);
  }
}

TEST_CASE("gluing errors") {
  const auto g = builtin::strip_preset(3);
  CHECK_THROWS_AS(glue(g.mesh, "west", "west", {{0, 0}, {4, 4}}), PreconditionError);
  CHECK_THROWS(glue(g.mesh, "west", "east", {{0, 3}}));
  // Matching that preserves orientation.
  CHECK_THROWS(glue(g.mesh, "west", "east", {{0, 7}, {4, 3}}));
  CHECK_THROWS(glue(g.mesh, "west", "nowhere", g.matching));
}

TEST_CASE("torus from two gluings is closed with b1 = 2") {
  const RegionMesh T = torus(3);
  CHECK(T.complex().is_closed());
  CHECK(betti_lu(T.complex(), 1) == 2);
  CHECK(betti_lu(T.complex(), 2) == 1);
}

TEST_CASE("disjoint union and orientation reversal") {
  const RegionMesh A = builtin::ann8();
  const RegionMesh U = disjoint_union(A, A, "l_", "r_", "pair");
  CHECK(U.complex().count(2) == 16);
  CHECK(betti_lu(U.complex(), 0) == 2);
  CHECK(U.labels().size() == 4);
  const RegionMesh R = reverse_orientation(A);
  for (int t = 0; t < A.complex().count(2); ++t)
    CHECK(R.complex().top_orientation(t) == -A.complex().top_orientation(t));
}

TEST_CASE("OFF export round trip keeps the complex") {
  const auto g = builtin::strip_preset(3);
  const RegionMesh R = glue(g.mesh, g.face_a, g.face_b, g.matching);
  const std::string text = to_off(R);
  const RegionMesh back = parse_off(text, "back", nullptr);
  CHECK(back.complex().count(2) == R.complex().count(2));
  CHECK(betti_lu(back.complex(), 1) == 1);
}

TEST_CASE("builtin specs") {
  CHECK(builtin::from_spec("disk:N=64").complex().count(2) == 64);
  CHECK(builtin::from_spec("annulus:N=32").labels().size() == 2);
  CHECK_THROWS_AS(builtin::from_spec("disk:N=two"), ParseError);
  CHECK_THROWS_AS(builtin::from_spec("disk:M=3"), ParseError);
  CHECK_THROWS_AS(builtin::from_spec("disk:N=2"), ParseError);
  CHECK_THROWS_AS(builtin::from_spec("blob"), ParseError);
}
