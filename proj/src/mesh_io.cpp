#include "ymdec/mesh_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "ymdec/builtin.hpp"
#include "ymdec/errors.hpp"

namespace ymdec {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Simplex parse_key(const std::string& key) {
  Simplex s;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || v < 0) throw ParseError("malformed facet key '" + key + "' in label sidecar");
    s.push_back(v);
  }
  std::sort(s.begin(), s.end());
  return s;
}

std::string simplex_key(const Simplex& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  return os.str();
}

}  // namespace

std::map<Simplex, std::string> read_label_sidecar(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("label sidecar '" + path + "': " + e.what());
  }
  if (!j.is_object() || !j.contains("labels") || !j["labels"].is_object())
    throw ParseError("label sidecar '" + path + "' needs an object field \"labels\"");
  std::map<Simplex, std::string> out;
  for (const auto& [key, value] : j["labels"].items()) {
    if (!value.is_string()) throw ParseError("label for '" + key + "' must be a string");
    if (!out.emplace(parse_key(key), value.get<std::string>()).second)
      throw ParseError("facet '" + key + "' labeled twice");
  }
  return out;
}

void write_label_sidecar(const RegionMesh& M, const std::string& path) {
  nlohmann::json labels = nlohmann::json::object();
  const int n = M.dim();
  for (const auto& [f, l] : M.face_labels()) labels[simplex_key(M.complex().simplex(n - 1, f))] = l;
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << nlohmann::json{{"labels", labels}}.dump(2) << "\n";
}

RegionMesh parse_off(const std::string& text, const std::string& name,
                     const std::map<Simplex, std::string>* labels) {
  std::stringstream raw(text);
  std::stringstream body;
  std::string line;
  while (std::getline(raw, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    body << line << "\n";
  }
  std::string header;
  if (!(body >> header) || header != "OFF") throw ParseError(name + ": missing OFF header");
  long nv = -1, nf = -1, ne = -1;
  if (!(body >> nv >> nf >> ne) || nv <= 0 || nf <= 0 || ne < 0)
    throw ParseError(name + ": malformed OFF counts");
  Eigen::MatrixXd X(nv, 3);
  for (long i = 0; i < nv; ++i)
    if (!(body >> X(i, 0) >> X(i, 1) >> X(i, 2))) throw ParseError(name + ": truncated vertex list");

  std::vector<std::vector<int>> cells;
  int arity = 0;
  std::getline(body, line);
  for (long f = 0; f < nf; ++f) {
    do {
      if (!std::getline(body, line)) throw ParseError(name + ": truncated face list");
    } while (line.find_first_not_of(" \t\r") == std::string::npos);
    std::stringstream ls(line);
    int k = 0;
    if (!(ls >> k) || (k != 3 && k != 4)) throw ParseError(name + ": only 3- and 4-index cells are supported");
    if (arity && k != arity) throw ParseError(name + ": mixed cell sizes");
    arity = k;
    std::vector<int> cell(k);
    for (int& v : cell) {
      if (!(ls >> v)) throw ParseError(name + ": truncated cell");
      if (v < 0 || v >= nv) throw ParseError(name + ": vertex index out of range");
    }
    cells.push_back(std::move(cell));
  }
  const int dim = arity - 1;
  // Planar input keeps two coordinates.
  if (dim == 2 && X.col(2).cwiseAbs().maxCoeff() == 0.0) X = Eigen::MatrixXd(X.leftCols(2));

  SimplicialComplex c = SimplicialComplex::from_ordered_tops(dim, static_cast<int>(nv), cells);
  Geometry g = Geometry::from_vertex_coords(c, X);
  std::map<int, std::string> facet_labels;
  for (int f : c.boundary_facets()) {
    const Simplex& s = c.simplex(dim - 1, f);
    if (!labels) {
      facet_labels[f] = "boundary";
      continue;
    }
    auto it = labels->find(s);
    if (it == labels->end()) throw TopologyError(name + ": unlabeled boundary facet " + simplex_key(s));
    facet_labels[f] = it->second;
  }
  if (labels)
    for (const auto& [s, l] : *labels) {
      const int f = c.find(s);
      if (f < 0 || c.facet_cofaces(f).size() != 1)
        throw TopologyError(name + ": label on a facet that is not on the boundary: " + simplex_key(s));
    }
  return RegionMesh::create(name, std::move(c), std::move(g), facet_labels);
}

RegionMesh load_off(const std::string& path, const std::optional<std::string>& labels_path) {
  std::optional<std::map<Simplex, std::string>> labels;
  if (labels_path) labels = read_label_sidecar(*labels_path);
  const std::string name = std::filesystem::path(path).stem().string();
  return parse_off(read_file(path), name, labels ? &*labels : nullptr);
}

std::string to_off(const RegionMesh& M) {
  const auto& c = M.complex();
  const auto& X = M.geometry().vertex_coords;
  const int n = c.dim();
  std::ostringstream os;
  os << std::setprecision(17);
  os << "OFF\n" << c.num_vertices() << " " << c.count(n) << " 0\n";
  for (int v = 0; v < c.num_vertices(); ++v) {
    for (int a = 0; a < 3; ++a) os << (a ? " " : "") << (a < X.cols() ? X(v, a) : 0.0);
    os << "\n";
  }
  for (int j = 0; j < c.count(n); ++j) {
    Simplex t = c.simplex(n, j);
    if (c.top_orientation(j) < 0) std::swap(t[0], t[1]);
    os << t.size();
    for (int v : t) os << " " << v;
    os << "\n";
  }
  return os.str();
}

void save_off(const RegionMesh& M, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << to_off(M);
}

RegionMesh load_mesh(const std::string& mesh, const std::optional<std::string>& labels_path) {
  if (builtin::is_builtin_spec(mesh) && !std::filesystem::exists(mesh)) {
    if (labels_path) throw ParseError("--labels applies to OFF meshes only");
    return builtin::from_spec(mesh);
  }
  return load_off(mesh, labels_path);
}

}  // namespace ymdec
