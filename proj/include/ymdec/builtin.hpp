#pragma once

#include <map>
#include <optional>
#include <string>

#include "ymdec/mesh.hpp"

namespace ymdec::builtin {

// Fan of N triangles around the origin; boundary label "boundary".
RegionMesh disk(int N, double radius = 1.0);
// Two concentric N-gons; labels "inner" and "outer".
RegionMesh annulus(int N, double r_inner = 1.0, double r_outer = 2.0, double phase = 0.0);
// Square annulus with 8 triangles, inner square [-1,1]^2, outer [-2,2]^2.
RegionMesh ann8();
// nx x ny grid on [0,w] x [0,h]; labels "south", "east", "north", "west".
RegionMesh rectangle(int nx, int ny, double w, double h);
RegionMesh square(int N);
// K x 1 strip of unit cells; gluing west to east gives an annulus.
RegionMesh strip(int K);
RegionMesh two_annuli(int N);
// Two unit squares with labels prefixed "a_" and "b_".
RegionMesh two_squares();
// Single tetrahedron; face i is opposite vertex i.
RegionMesh tetrahedron();
// Kuhn triangulation of the unit cube; labels "x0", "x1", "y0", "y1", "z0", "z1".
RegionMesh cube(int N);
// Ring of K triangular prisms, each split into 3 tetrahedra; label "surface".
RegionMesh solid_torus(int K);
// Octahedron surface: a closed 2D region with empty boundary.
RegionMesh sphere();

// Closed polygonal loop of N edges and total length `length` (boundary of a regular N-gon fan).
HypersurfaceMesh loop(int N, double length);

// Parses "name[:key=value,...]", e.g. "disk:N=64". Throws ParseError.
RegionMesh from_spec(const std::string& spec);
bool is_builtin_spec(const std::string& spec);

struct GluePreset {
  RegionMesh mesh;
  std::string face_a;
  std::string face_b;
  std::map<int, int> matching;
};

// Glueable built-in configurations: "strip:N=K" and "two-squares".
std::optional<GluePreset> glue_preset(const std::string& spec);
GluePreset strip_preset(int K);
GluePreset two_squares_preset();

}  // namespace ymdec::builtin
