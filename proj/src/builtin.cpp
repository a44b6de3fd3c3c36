#include "ymdec/builtin.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ymdec/errors.hpp"

namespace ymdec::builtin {

namespace {

// Reorders each top so that its signed volume in the first n coordinates
// (or along the outward radial direction for closed surfaces in 3D) is positive.
std::vector<std::vector<int>> orient(const Eigen::MatrixXd& X, std::vector<std::vector<int>> tops,
                                     bool outward = false) {
  for (auto& t : tops) {
    const int n = static_cast<int>(t.size()) - 1;
    double det;
    if (outward) {
      Eigen::Matrix3d m;
      for (int i = 0; i < 3; ++i) m.row(i) = X.row(t[i]).head<3>();
      det = m.determinant();
    } else {
      Eigen::MatrixXd e(n, n);
      for (int i = 0; i < n; ++i) e.row(i) = X.row(t[i + 1]).head(n) - X.row(t[0]).head(n);
      det = e.determinant();
    }
    if (det < 0) std::swap(t[0], t[1]);
  }
  return tops;
}

RegionMesh make(const std::string& name, int dim, const Eigen::MatrixXd& X,
                const std::vector<std::vector<int>>& tops,
                const std::function<std::string(const Simplex&)>& label_of, bool outward = false) {
  SimplicialComplex c = SimplicialComplex::from_ordered_tops(
      dim, static_cast<int>(X.rows()), orient(X, tops, outward));
  Geometry g = Geometry::from_vertex_coords(c, X);
  std::map<int, std::string> labels;
  for (int f : c.boundary_facets()) labels[f] = label_of(c.simplex(dim - 1, f));
  return RegionMesh::create(name, std::move(c), std::move(g), labels);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw PreconditionError(msg);
}

}  // namespace

RegionMesh disk(int N, double radius) {
  require(N >= 3, "disk needs N >= 3");
  Eigen::MatrixXd X(N + 1, 2);
  X.row(0) << 0.0, 0.0;
  for (int i = 0; i < N; ++i) {
    const double t = 2.0 * std::numbers::pi * i / N;
    X.row(i + 1) << radius * std::cos(t), radius * std::sin(t);
  }
  std::vector<std::vector<int>> tops;
  for (int i = 0; i < N; ++i) tops.push_back({0, i + 1, (i + 1) % N + 1});
  return make("disk:N=" + std::to_string(N), 2, X, tops, [](const Simplex&) { return "boundary"; });
}

RegionMesh annulus(int N, double r_inner, double r_outer, double phase) {
  require(N >= 3, "annulus needs N >= 3");
  Eigen::MatrixXd X(2 * N, 2);
  for (int i = 0; i < N; ++i) {
    const double t = phase + 2.0 * std::numbers::pi * i / N;
    X.row(i) << r_inner * std::cos(t), r_inner * std::sin(t);
    X.row(N + i) << r_outer * std::cos(t), r_outer * std::sin(t);
  }
  std::vector<std::vector<int>> tops;
  for (int i = 0; i < N; ++i) {
    const int j = (i + 1) % N;
    tops.push_back({i, N + i, N + j});
    tops.push_back({i, N + j, j});
  }
  return make("annulus:N=" + std::to_string(N), 2, X, tops,
              [N](const Simplex& s) { return s[0] < N ? "inner" : "outer"; });
}

RegionMesh ann8() {
  return annulus(4, std::sqrt(2.0), 2.0 * std::sqrt(2.0), std::numbers::pi / 4).renamed("ann8");
}

RegionMesh rectangle(int nx, int ny, double w, double h) {
  require(nx >= 1 && ny >= 1, "rectangle needs at least one cell per direction");
  Eigen::MatrixXd X((nx + 1) * (ny + 1), 2);
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) X.row(id(i, j)) << w * i / nx, h * j / ny;
  std::vector<std::vector<int>> tops;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      tops.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tops.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  auto label = [&X, w, h](const Simplex& s) -> std::string {
    const Eigen::RowVectorXd a = X.row(s[0]), b = X.row(s[1]);
    const double eps = 1e-12 * std::max(w, h);
    if (std::abs(a(1)) < eps && std::abs(b(1)) < eps) return "south";
    if (std::abs(a(1) - h) < eps && std::abs(b(1) - h) < eps) return "north";
    if (std::abs(a(0)) < eps && std::abs(b(0)) < eps) return "west";
    return "east";
  };
  std::ostringstream name;
  name << "rectangle:" << nx << "x" << ny;
  return make(name.str(), 2, X, tops, label);
}

RegionMesh square(int N) { return rectangle(N, N, 1.0, 1.0).renamed("square:N=" + std::to_string(N)); }

RegionMesh strip(int K) {
  require(K >= 3, "strip needs N >= 3 so that gluing its ends stays simplicial");
  return rectangle(K, 1, K, 1.0).renamed("strip:N=" + std::to_string(K));
}

namespace {

RegionMesh shifted(const RegionMesh& M, const Eigen::RowVectorXd& shift) {
  const auto& c = M.complex();
  Eigen::MatrixXd X = M.geometry().vertex_coords.rowwise() + shift;
  Geometry g = Geometry::from_vertex_coords(c, X);
  return RegionMesh::create(M.name(), c, std::move(g), M.face_labels());
}

}  // namespace

RegionMesh two_annuli(int N) {
  Eigen::RowVectorXd shift(2);
  shift << 5.0, 0.0;
  return disjoint_union(annulus(N), shifted(annulus(N), shift), "a_", "b_",
                        "two-annuli:N=" + std::to_string(N));
}

RegionMesh two_squares() {
  Eigen::RowVectorXd shift(2);
  shift << 2.0, 0.0;
  return disjoint_union(square(1), shifted(square(1), shift), "a_", "b_", "two-squares");
}

RegionMesh tetrahedron() {
  Eigen::MatrixXd X(4, 3);
  X << 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1;
  return make("tetrahedron", 3, X, {{0, 1, 2, 3}}, [](const Simplex& s) {
    int missing = 0 + 1 + 2 + 3 - s[0] - s[1] - s[2];
    return "face" + std::to_string(missing);
  });
}

RegionMesh cube(int N) {
  require(N >= 1, "cube needs N >= 1");
  const int m = N + 1;
  auto id = [m](int i, int j, int k) { return (k * m + j) * m + i; };
  Eigen::MatrixXd X(m * m * m, 3);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) X.row(id(i, j, k)) << double(i) / N, double(j) / N, double(k) / N;
  std::vector<std::vector<int>> tops;
  int perm[3] = {0, 1, 2};
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        std::sort(perm, perm + 3);
        do {
          int p[3] = {i, j, k};
          std::vector<int> t{id(p[0], p[1], p[2])};
          for (int a : perm) {
            ++p[a];
            t.push_back(id(p[0], p[1], p[2]));
          }
          tops.push_back(t);
        } while (std::next_permutation(perm, perm + 3));
      }
  auto label = [&X](const Simplex& s) -> std::string {
    static const char* names[3][2] = {{"x0", "x1"}, {"y0", "y1"}, {"z0", "z1"}};
    for (int a = 0; a < 3; ++a)
      for (int side = 0; side < 2; ++side) {
        bool all = true;
        for (int v : s) all = all && std::abs(X(v, a) - side) < 1e-12;
        if (all) return names[a][side];
      }
    return "interior";
  };
  return make("cube:N=" + std::to_string(N), 3, X, tops, label);
}

RegionMesh solid_torus(int K) {
  require(K >= 4, "solid torus needs N >= 4 prisms");
  const double R = 3.0;
  const double section[3][2] = {{-0.5, -0.5}, {0.5, -0.5}, {0.0, 0.5}};
  Eigen::MatrixXd X(3 * K, 3);
  for (int i = 0; i < K; ++i) {
    const double t = 2.0 * std::numbers::pi * i / K;
    for (int a = 0; a < 3; ++a) {
      const double r = R + section[a][0];
      X.row(3 * i + a) << r * std::cos(t), r * std::sin(t), section[a][1];
    }
  }
  std::vector<std::vector<int>> tops;
  for (int i = 0; i < K; ++i) {
    const int j = (i + 1) % K;
    const int a = 3 * i, b = 3 * i + 1, c = 3 * i + 2;
    const int A = 3 * j, B = 3 * j + 1, C = 3 * j + 2;
    tops.push_back({a, b, c, A});
    tops.push_back({b, c, A, B});
    tops.push_back({c, A, B, C});
  }
  return make("solid-torus:N=" + std::to_string(K), 3, X, tops,
              [](const Simplex&) { return "surface"; });
}

RegionMesh sphere() {
  Eigen::MatrixXd X(6, 3);
  X << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1;
  std::vector<std::vector<int>> tops;
  for (int x : {0, 1})
    for (int y : {2, 3})
      for (int z : {4, 5}) tops.push_back({x, y, z});
  return make("sphere", 2, X, tops, [](const Simplex&) { return "none"; }, true);
}

HypersurfaceMesh loop(int N, double length) {
  const double radius = length / (2.0 * N * std::sin(std::numbers::pi / N));
  return boundary_complex(disk(N, radius));
}

namespace {

struct ParsedSpec {
  std::string name;
  std::map<std::string, std::string> params;
};

ParsedSpec parse_spec(const std::string& spec) {
  ParsedSpec p;
  const auto colon = spec.find(':');
  p.name = spec.substr(0, colon);
  if (colon == std::string::npos) return p;
  std::stringstream rest(spec.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw ParseError("malformed builtin parameter '" + item + "' in '" + spec + "'");
    p.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return p;
}

int int_param(const ParsedSpec& p, const std::string& key, int fallback) {
  for (const auto& [k, v] : p.params)
    if (k != key) throw ParseError("unknown builtin parameter '" + k + "' for " + p.name);
  auto it = p.params.find(key);
  if (it == p.params.end()) return fallback;
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size()) throw ParseError("parameter " + key + " must be an integer");
  return value;
}

void no_params(const ParsedSpec& p) {
  if (!p.params.empty()) throw ParseError("builtin '" + p.name + "' takes no parameters");
}

}  // namespace

bool is_builtin_spec(const std::string& spec) {
  static const char* names[] = {"disk",        "annulus", "ann8",   "square",     "strip",
                                "two-annuli",  "two-squares", "tetrahedron", "cube",
                                "solid-torus", "sphere",  "hexagon", "tri1"};
  const std::string name = spec.substr(0, spec.find(':'));
  for (const char* n : names)
    if (name == n) return true;
  return false;
}

RegionMesh from_spec(const std::string& spec) {
  const ParsedSpec p = parse_spec(spec);
  try {
    if (p.name == "disk") return disk(int_param(p, "N", 16));
    if (p.name == "hexagon") return no_params(p), disk(6).renamed("hexagon");
    if (p.name == "annulus") return annulus(int_param(p, "N", 16));
    if (p.name == "ann8") return no_params(p), ann8();
    if (p.name == "square") return square(int_param(p, "N", 2));
    if (p.name == "strip") return strip(int_param(p, "N", 3));
    if (p.name == "two-annuli") return two_annuli(int_param(p, "N", 8));
    if (p.name == "two-squares") return no_params(p), two_squares();
    if (p.name == "tetrahedron") return no_params(p), tetrahedron();
    if (p.name == "cube") return cube(int_param(p, "N", 1));
    if (p.name == "solid-torus") return solid_torus(int_param(p, "N", 6));
    if (p.name == "sphere") return no_params(p), sphere();
    if (p.name == "tri1") {
      no_params(p);
      Eigen::MatrixXd X(3, 2);
      X << 0, 0, 1, 0, 0, 1;
      return make("Tri1", 2, X, {{0, 1, 2}}, [](const Simplex&) { return "boundary"; });
    }
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("invalid builtin spec '") + spec + "': " + e.what());
  }
  throw ParseError("unknown builtin mesh '" + p.name + "'");
}

GluePreset strip_preset(int K) {
  GluePreset g{strip(K), "west", "east", {}};
  for (int j = 0; j <= 1; ++j) g.matching[j * (K + 1)] = j * (K + 1) + K;
  return g;
}

GluePreset two_squares_preset() {
  // square(1) vertex ids: 0=(0,0), 1=(1,0), 2=(0,1), 3=(1,1); the second copy is offset by 4.
  return {two_squares(), "a_east", "b_west", {{1, 4}, {3, 6}}};
}

std::optional<GluePreset> glue_preset(const std::string& spec) {
  const ParsedSpec p = parse_spec(spec);
  if (p.name == "strip") {
    try {
      return strip_preset(int_param(p, "N", 3));
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }
  if (p.name == "two-squares") return no_params(p), two_squares_preset();
  return std::nullopt;
}

}  // namespace ymdec::builtin
