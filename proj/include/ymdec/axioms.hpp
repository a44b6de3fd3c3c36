#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ymdec/mesh.hpp"
#include "ymdec/tolerances.hpp"

namespace ymdec {

// One gated quantity. Boolean and integer checks leave `tolerance` empty.
struct Check {
  std::string name;
  double value = 0.0;
  std::string tolerance;
  double limit = 0.0;
  bool passed = false;
};

struct AxiomResult {
  std::string id;
  std::string title;
  std::string status;  // "pass", "fail" or "by construction"
  std::vector<Check> checks;
  std::string detail;
  bool ok() const { return status != "fail"; }
};

struct AxiomReport {
  std::string mesh;
  std::uint64_t seed = 0;
  std::vector<AxiomResult> results;
  bool all_passed() const;
  const AxiomResult& get(const std::string& id) const;
};

// Replaces one star weight for the action and potential evaluations only.
struct StarFault {
  int degree = 2;
  int index = 0;
  double value = -1.0;
};

struct AxiomOptions {
  std::uint64_t seed = 0;
  int trials = 5;
  Tolerances tol;
  std::optional<StarFault> fault;
  bool include_gluing = true;
};

AxiomReport verify_axioms(const RegionMesh& M, const AxiomOptions& options = {});

}  // namespace ymdec
