#pragma once

#include <string>
#include <vector>

namespace ymdec {

// Every gated tolerance used by checks and reports. Overridable by name.
struct Tolerances {
  double rank_relative = 1e-8;     // numerical rank threshold, relative to sigma_max
  double rank_gap = 10.0;          // retained/discarded singular value ratio below this is ambiguous
  double principal_angle = 1e-7;   // subspace containment, radians
  double stokes = 1e-12;           // adjointness defect, relative
  double isotropy = 1e-11;         // max |omega| over solution pairs, relative
  double identity = 1e-11;         // bracket/action identities and gluing action, relative
  double factorization = 1e-12;    // face factorization, relative
  double hmf = 1e-10;              // HMF orthogonality and reconstruction, relative
  double hmf_idempotence = 1e-9;   // decomposing a component reproduces it
  double harmonic = 1e-9;          // ||d alpha|| + ||d* alpha|| for harmonic basis columns
  double solution = 1e-9;          // Euler-Lagrange residual of a solution, relative
  double gauge_fix = 1e-10;        // idempotence of the coclosed gauge fix
  double holonomy = 1e-10;         // holonomy invariance mod 2 pi
  double coclosed_input = 1e-8;    // accepting an input as coclosed
  double extension = 1e-8;         // relative residual for extend and round trips
  double line = 1e-12;             // 2D Stokes line residual, relative
  double kappa = 1e-12;            // measured reduced-form coefficient vs 1/2

  struct Entry {
    std::string name;
    double Tolerances::*field;
    std::string description;
  };
  static const std::vector<Entry>& table();

  // Throws PreconditionError on an unknown name or a non-positive value.
  void set(const std::string& name, double value);
  double get(const std::string& name) const;
};

}  // namespace ymdec
