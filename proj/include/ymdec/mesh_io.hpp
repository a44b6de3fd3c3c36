#pragma once

#include <map>
#include <optional>
#include <string>

#include "ymdec/mesh.hpp"

namespace ymdec {

// Face-label sidecar: {"labels": {"0,1": "outer", ...}}; keys are facet vertex ids in any order.
std::map<Simplex, std::string> read_label_sidecar(const std::string& path);
void write_label_sidecar(const RegionMesh& M, const std::string& path);

// OFF reader. Cells with 3 indices are triangles, cells with 4 indices are tetrahedra.
// Orientation follows the vertex order of each cell. Without a sidecar every boundary
// facet gets the label "boundary".
RegionMesh load_off(const std::string& path, const std::optional<std::string>& labels_path = std::nullopt);
RegionMesh parse_off(const std::string& text, const std::string& name,
                     const std::map<Simplex, std::string>* labels);
void save_off(const RegionMesh& M, const std::string& path);
std::string to_off(const RegionMesh& M);

// Loads a builtin spec ("disk:N=64") or an OFF path.
RegionMesh load_mesh(const std::string& mesh, const std::optional<std::string>& labels_path = std::nullopt);

}  // namespace ymdec
