#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "ymdec/axioms.hpp"
#include "ymdec/dynamics.hpp"
#include "ymdec/hodge.hpp"
#include "ymdec/tolerances.hpp"
#include "ymdec/ym2d.hpp"

namespace ymdec {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "ymdec.report/1";

Json to_json(const Tolerances& tol);
Json to_json(const RankInfo& info);
Json to_json(const LagrangianReport& r);
Json to_json(const GluingReport& r);
Json to_json(const LineReport& r);
Json to_json(const ReducedFormReport& r);
Json to_json(const AxiomReport& r);
Json to_json(const std::vector<LineSweepRow>& rows);
Json to_json(const BoundaryDatum& d);

// Theorem and axiom identifiers a command's checks trace to.
struct Anchor {
  std::string id;
  std::string title;
};
std::vector<Anchor> anchors_for(const std::string& command);

// {"schema", "command", "mesh", "seed", "passed", "tolerances", "anchors", "result"}.
Json envelope(const std::string& command, const std::string& mesh, std::uint64_t seed,
              const Tolerances& tol, bool passed, Json result);

// "key,value" lines with dotted keys; arrays are indexed ("a.0", "a.1").
std::string to_csv(const Json& report);
std::string sweep_csv(const std::vector<LineSweepRow>& rows);

}  // namespace ymdec
