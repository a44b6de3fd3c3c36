#include "ymdec/tolerances.hpp"

#include "ymdec/errors.hpp"

namespace ymdec {

const std::vector<Tolerances::Entry>& Tolerances::table() {
  static const std::vector<Entry> entries = {
      {"rank_relative", &Tolerances::rank_relative, "numerical rank threshold relative to the largest singular value"},
      {"rank_gap", &Tolerances::rank_gap, "minimum retained/discarded singular value ratio"},
      {"principal_angle", &Tolerances::principal_angle, "subspace containment angle in radians"},
      {"stokes", &Tolerances::stokes, "relative adjointness defect"},
      {"isotropy", &Tolerances::isotropy, "relative max |omega| over solution pairs"},
      {"identity", &Tolerances::identity, "relative residual of bracket, action and gluing identities"},
      {"factorization", &Tolerances::factorization, "relative face factorization residual"},
      {"hmf", &Tolerances::hmf, "relative HMF orthogonality and reconstruction residual"},
      {"hmf_idempotence", &Tolerances::hmf_idempotence, "relative HMF idempotence residual"},
      {"harmonic", &Tolerances::harmonic, "relative ||d a|| + ||d* a|| of harmonic basis columns"},
      {"solution", &Tolerances::solution, "relative Euler-Lagrange residual of a solution"},
      {"gauge_fix", &Tolerances::gauge_fix, "gauge fix idempotence"},
      {"holonomy", &Tolerances::holonomy, "holonomy invariance modulo 2 pi"},
      {"coclosed_input", &Tolerances::coclosed_input, "relative d* residual for coclosed inputs"},
      {"extension", &Tolerances::extension, "relative residual of extension and round trips"},
      {"line", &Tolerances::line, "relative residual of the 2D Stokes line"},
      {"kappa", &Tolerances::kappa, "deviation of the measured reduced-form coefficient from 1/2"},
  };
  return entries;
}

void Tolerances::set(const std::string& name, double value) {
  for (const auto& e : table()) {
    if (e.name == name) {
      if (!(value > 0.0)) throw PreconditionError("tolerance '" + name + "' must be positive");
      this->*(e.field) = value;
      return;
    }
  }
  throw PreconditionError("unknown tolerance '" + name + "'");
}

double Tolerances::get(const std::string& name) const {
  for (const auto& e : table())
    if (e.name == name) return this->*(e.field);
  throw PreconditionError("unknown tolerance '" + name + "'");
}

}  // namespace ymdec
