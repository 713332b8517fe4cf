#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "singlap/reports.hpp"

namespace py = pybind11;
using namespace singlap;

namespace {

std::pair<std::vector<double>, std::vector<double>> solve_radial(int N, double p, double r_max,
                                                                 std::size_t nodes,
                                                                 const std::vector<double>& rhs) {
  GridPtr g = build_grid(N, r_max, nodes);
  if (rhs.size() != g->size())
    throw std::invalid_argument("rhs length must equal the node count");
  RadialField h{g, rhs};
  PLapSolution sol = solve_plap(p, h);
  return {g->nodes, sol.u.values};
}

std::string bounds_json_from_text(const std::string& text) {
  RunConfig rc = parse_config(text);
  GridPtr g = build_grid(rc.grid_N, rc.r_max, rc.nodes, rc.grading, rc.ratio);
  DerivedExponents dex = derive_exponents(rc.exponents);
  WeightNorms n1 = weight_norms(rc.a1, rc.exponents, dex, 1, g, rc.bounds.xi1);
  WeightNorms n2 = weight_norms(rc.a2, rc.exponents, dex, 2, g, rc.bounds.xi2);
  BoundsReport b = compute_bounds(rc.exponents, n1, n2, rc.bounds.kappa0, rc.bounds.tail_tol);
  return bounds_report(rc, b, n1, n2).dump();
}

std::string solve_json_from_text(const std::string& text) {
  RunConfig rc = parse_config(text);
  GridPtr g = build_grid(rc.grid_N, rc.r_max, rc.nodes, rc.grading, rc.ratio);
  SetupParams sp;
  sp.xi1 = rc.bounds.xi1;
  sp.xi2 = rc.bounds.xi2;
  sp.kappa0 = rc.bounds.kappa0;
  sp.ladder_tol = rc.bounds.tail_tol;
  ProblemSetup ctx = make_setup(rc.exponents, rc.a1, rc.a2, g, sp);
  std::vector<double> sched =
      rc.solver.eps_schedule.empty() ? default_eps_schedule() : rc.solver.eps_schedule;
  ContinuationResult res = continuation(sched, rc.solver.theta, rc.solver.tol,
                                        rc.solver.max_iter, ctx, rc.solver.residual_tol);
  TruncatedIneqReport trunc =
      truncated_inequality_check(res.u, res.v, rc.exponents, ctx.a1, ctx.a2, ctx.tests);
  return solve_report(rc, ctx, res, trunc).dump();
}

std::string validate_json_str(const ExponentConfig& cfg) {
  return validation_json(validate(cfg)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Singular quasilinear system solver core";

  py::class_<ExponentConfig>(m, "ExponentConfig")
      .def(py::init<>())
      .def_readwrite("N", &ExponentConfig::N)
      .def_readwrite("p1", &ExponentConfig::p1)
      .def_readwrite("p2", &ExponentConfig::p2)
      .def_readwrite("alpha1", &ExponentConfig::alpha1)
      .def_readwrite("alpha2", &ExponentConfig::alpha2)
      .def_readwrite("beta1", &ExponentConfig::beta1)
      .def_readwrite("beta2", &ExponentConfig::beta2)
      .def_readwrite("m1", &ExponentConfig::m1)
      .def_readwrite("M1", &ExponentConfig::M1)
      .def_readwrite("m2", &ExponentConfig::m2)
      .def_readwrite("M2", &ExponentConfig::M2)
      .def_readwrite("zeta1", &ExponentConfig::zeta1)
      .def_readwrite("zeta2", &ExponentConfig::zeta2);

  m.def("phi_p", &phi_p, py::arg("s"), py::arg("p"));
  m.def("phi_p_inv", &phi_p_inv, py::arg("t"), py::arg("p"));
  m.def("talenti_constant", &talenti_constant, py::arg("N"), py::arg("p"));
  m.def("simon_constant", &simon_constant, py::arg("p"));
  m.def("moser_c4", &moser_c4, py::arg("p"));
  m.def("validate_json", &validate_json_str, py::arg("config"));
  m.def("solve_radial", &solve_radial, py::arg("N"), py::arg("p"), py::arg("r_max"),
        py::arg("nodes"), py::arg("rhs"),
        "Exact quadrature solve of the radial p-Laplacian Dirichlet problem; "
        "returns (radii, values).");
  m.def("bounds_json", &bounds_json_from_text, py::arg("config_text"));
  m.def("solve_json", &solve_json_from_text, py::arg("config_text"));
  m.def("config_hash", &fnv1a_hex, py::arg("text"));
}
