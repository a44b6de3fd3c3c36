#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ymdec/cli.hpp"
#include "ymdec/errors.hpp"
#include "ymdec/homology.hpp"
#include "ymdec/mesh_io.hpp"

namespace py = pybind11;
using namespace ymdec;

namespace {

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> full = {"ymdec"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

py::tuple run(const std::string& command, const std::string& mesh, const std::string& labels, std::uint64_t seed,
              const std::map<std::string, double>& tolerances, const std::string& format, int trials, int degree) {
  cli::ExperimentConfig cfg;
  cfg.command = command;
  cfg.mesh = mesh;
  cfg.labels = labels;
  cfg.seed = seed;
  cfg.format = format;
  cfg.trials = trials;
  cfg.degree = degree;
  for (const auto& [name, value] : tolerances) cfg.tolerances.set(name, value);
  std::string text;
  bool passed = false;
  {
    py::gil_scoped_release release;
    const cli::RunResult r = cli::run(cfg);
    text = cli::render(cfg, r);
    passed = r.passed;
  }
  return py::make_tuple(passed, text);
}

std::vector<py::tuple> tolerance_table() {
  const Tolerances defaults;
  std::vector<py::tuple> rows;
  for (const auto& e : Tolerances::table()) rows.push_back(py::make_tuple(e.name, defaults.*(e.field), e.description));
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete abelian Yang-Mills checks on simplicial meshes";

  auto base = py::register_exception<Error>(m, "YmdecError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<TopologyError>(m, "TopologyError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  m.def("run_cli", &run_cli, py::arg("args"), "Run the command line front end; returns (exit code, stdout, stderr).");
  m.def("run", &run, py::arg("command"), py::arg("mesh"), py::arg("labels") = "", py::arg("seed") = 0,
        py::arg("tolerances") = std::map<std::string, double>{}, py::arg("format") = "json", py::arg("trials") = 0,
        py::arg("degree") = 1, "Run one experiment; returns (passed, rendered report).");
  m.def(
      "betti",
      [](const std::string& mesh, int k) { return betti_oracle(load_mesh(mesh).complex(), k); },
      py::arg("mesh"), py::arg("k"));
  m.def(
      "relative_betti",
      [](const std::string& mesh, int k) { return relative_betti_oracle(load_mesh(mesh).complex(), k); },
      py::arg("mesh"), py::arg("k"));
  m.def("tolerances", &tolerance_table, "Rows of (name, default, description).");
  m.attr("exit_ok") = cli::kExitOk;
  m.attr("exit_failed") = cli::kExitFailed;
  m.attr("exit_config") = cli::kExitConfig;
  m.attr("report_schema") = kReportSchema;
}
