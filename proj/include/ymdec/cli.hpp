#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ymdec/report.hpp"
#include "ymdec/tolerances.hpp"

namespace ymdec::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a gated check failed or a numerical error occurred
inline constexpr int kExitConfig = 2;  // bad arguments, unreadable or malformed input

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "YMDEC_OUTPUT_DIR";

struct ExperimentConfig {
  std::string command;  // decompose, harmonic, verify-lagrangian, verify-axioms, glue, ym2d
  std::string mesh;     // builtin spec ("disk:N=64") or OFF path
  std::string labels;   // optional sidecar for OFF input
  Tolerances tolerances;
  std::string output;   // empty: YMDEC_OUTPUT_DIR/<command>.<format>, else stdout
  std::string format = "json";
  std::uint64_t seed = 0;

  int degree = 1;   // decompose
  int trials = 0;   // decompose, verify-axioms; 0 picks the command default
  bool inject_fault = false;  // verify-axioms
  std::string face_a, face_b, matching;  // glue
  std::string export_path;               // glue: glued mesh as OFF
  std::vector<int> sweep;                // ym2d
};

// Parses "name=value" and applies it. Throws PreconditionError.
void apply_tolerance(Tolerances& tol, const std::string& assignment);
// Parses "1:4,3:6". Throws ParseError.
std::map<int, int> parse_matching(const std::string& text);

struct RunResult {
  Json report;
  bool passed = false;
};

// Runs one experiment. Throws ymdec errors for bad input.
RunResult run(const ExperimentConfig& config);
std::string render(const ExperimentConfig& config, const RunResult& result);

// Full command line front end; returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ymdec::cli
