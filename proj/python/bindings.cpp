#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stagfv/audit.hpp"
#include "stagfv/diagnostics.hpp"
#include "stagfv/riemann.hpp"
#include "stagfv/scheme.hpp"

namespace py = pybind11;
using namespace stagfv;

namespace {

InterpolantChoice choice_from(const std::string& name) {
  const Interp i = parse_interp(name);
  return {i, i, i};
}

StaggeredMesh make_mesh(int dim, const std::vector<std::array<double, 2>>& extents,
                        const std::vector<int>& counts) {
  return build_mesh(dim, extents, counts);
}

State py_initialize(const StaggeredMesh& mesh, const py::function& rho0,
                    const py::function& e0, const py::function& u0, double gamma) {
  InitialData data;
  data.rho0 = [rho0](Vec2 x) { return rho0(x.x, x.y).cast<double>(); };
  data.e0 = [e0](Vec2 x) { return e0(x.x, x.y).cast<double>(); };
  data.u0 = [u0](Vec2 x) {
    const auto pair = u0(x.x, x.y).cast<std::pair<double, double>>();
    return Vec2{pair.first, pair.second};
  };
  return initialize(mesh, data, GasConfig{gamma});
}

State preset_initialize(const StaggeredMesh& mesh, const std::string& preset, double gamma) {
  if (preset == "sod") return initialize(mesh, sod_initial(gamma), GasConfig{gamma});
  if (preset == "smooth2d") return initialize(mesh, smooth2d_initial(gamma), GasConfig{gamma});
  if (preset == "uniform")
    return initialize(mesh, uniform_initial(1.0, 1.0, {0.0, 0.0}), GasConfig{gamma});
  throw ConfigError("unknown preset '" + preset + "'");
}

struct RunResult {
  State final_state;
  long steps = 0;
  std::optional<std::string> failure;
  std::vector<State> snapshots;
  std::optional<AuditReport> audit;
};

RunResult py_run(const StaggeredMesh& mesh, const State& initial, double gamma, double cfl,
                 double t_end, long max_steps, const std::string& interp, bool uniform_dt,
                 const std::vector<double>& output_times, bool audit) {
  StepConfig config;
  config.cfl = cfl;
  config.t_end = t_end;
  config.max_steps = max_steps;
  config.interp = choice_from(interp);
  config.uniform_dt = uniform_dt;
  Auditor auditor(mesh);
  StepObserver observer;
  if (audit) observer = std::ref(auditor);
  const Trajectory traj = run(mesh, initial, GasConfig{gamma}, config, output_times, observer);
  RunResult result;
  result.final_state = traj.final_state;
  result.steps = traj.steps;
  if (traj.failure) result.failure = traj.failure->message;
  result.snapshots = traj.snapshots;
  if (audit) result.audit = auditor.finish();
  return result;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "staggered finite-volume Euler solver with a conservation audit";

  py::register_exception<ConfigError>(m, "ConfigurationError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverFailure", PyExc_RuntimeError);

  py::class_<StaggeredMesh>(m, "Mesh")
      .def_readonly("dim", &StaggeredMesh::dim)
      .def_property_readonly("n_cells", &StaggeredMesh::n_cells)
      .def_property_readonly("n_faces", &StaggeredMesh::n_faces)
      .def_property_readonly("cell_centers",
                             [](const StaggeredMesh& mesh) {
                               std::vector<std::pair<double, double>> out;
                               for (const Cell& c : mesh.cells)
                                 out.emplace_back(c.centroid.x, c.centroid.y);
                               return out;
                             })
      .def_property_readonly("cell_volumes",
                             [](const StaggeredMesh& mesh) {
                               std::vector<double> out;
                               for (const Cell& c : mesh.cells) out.push_back(c.volume);
                               return out;
                             })
      .def_property_readonly("face_centers",
                             [](const StaggeredMesh& mesh) {
                               std::vector<std::pair<double, double>> out;
                               for (const Face& f : mesh.faces)
                                 out.emplace_back(f.center.x, f.center.y);
                               return out;
                             })
      .def("regularity",
           [](const StaggeredMesh& mesh) {
             const MeshRegularity reg = regularity(mesh);
             return py::dict(py::arg("theta1") = reg.theta1, py::arg("theta2") = reg.theta2,
                             py::arg("h") = reg.h);
           })
      .def("summary", &mesh_summary);

  py::class_<State>(m, "State")
      .def_readonly("t", &State::t)
      .def_readonly("step_index", &State::step_index)
      .def_readonly("rho", &State::rho)
      .def_readonly("e", &State::e)
      .def_readonly("p", &State::p)
      .def_property_readonly("u", [](const State& s) {
        std::vector<std::pair<double, double>> out;
        for (const Vec2& v : s.u) out.emplace_back(v.x, v.y);
        return out;
      });

  py::class_<AuditReport>(m, "AuditReport")
      .def_readonly("res_dual_mass_max", &AuditReport::res_dual_mass_max)
      .def_readonly("res_kinetic_max", &AuditReport::res_kinetic_max)
      .def_readonly("res_energy_max", &AuditReport::res_energy_max)
      .def_readonly("g_antisym_max", &AuditReport::g_antisym_max)
      .def_readonly("mass_drift_rel", &AuditReport::mass_drift_rel)
      .def_readonly("energy_drift_rel", &AuditReport::energy_drift_rel)
      .def_readonly("min_rho", &AuditReport::min_rho)
      .def_readonly("min_e", &AuditReport::min_e)
      .def_readonly("min_remainder", &AuditReport::min_remainder)
      .def_readonly("positive", &AuditReport::positive)
      .def("summary", &AuditReport::summary);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("final_state", &RunResult::final_state)
      .def_readonly("steps", &RunResult::steps)
      .def_readonly("failure", &RunResult::failure)
      .def_readonly("snapshots", &RunResult::snapshots)
      .def_readonly("audit", &RunResult::audit);

  m.def("build_mesh", &make_mesh, py::arg("dim"), py::arg("extents"), py::arg("counts"),
        "uniform 1D or 2D staggered mesh");
  m.def("initialize", &py_initialize, py::arg("mesh"), py::arg("rho0"), py::arg("e0"),
        py::arg("u0"), py::arg("gamma") = 1.4,
        "cell/dual-cell averages of callables f(x, y); u0 returns (ux, uy)");
  m.def("initialize_preset", &preset_initialize, py::arg("mesh"), py::arg("preset"),
        py::arg("gamma") = 1.4);
  m.def(
      "compute_dt",
      [](const StaggeredMesh& mesh, const State& s, double gamma, double cfl) {
        return compute_dt(mesh, s, GasConfig{gamma}, cfl, 1e300);
      },
      py::arg("mesh"), py::arg("state"), py::arg("gamma") = 1.4, py::arg("cfl") = 0.4);
  m.def(
      "step",
      [](const StaggeredMesh& mesh, const State& s, double gamma, double dt,
         const std::string& interp) {
        const StepResult r =
            step(mesh, s, zero_source(mesh), GasConfig{gamma}, choice_from(interp), dt);
        return r.state;
      },
      py::arg("mesh"), py::arg("state"), py::arg("gamma"), py::arg("dt"),
      py::arg("interp") = "upwind", "one explicit step from a zero corrective source");
  m.def("run", &py_run, py::arg("mesh"), py::arg("state"), py::arg("gamma") = 1.4,
        py::arg("cfl") = 0.4, py::arg("t_end") = 0.0, py::arg("max_steps") = 1000000,
        py::arg("interp") = "upwind", py::arg("uniform_dt") = true,
        py::arg("output_times") = std::vector<double>{}, py::arg("audit") = false);
  m.def(
      "solve_xi_coefficients",
      [](int zeta) {
        const XiTable& xi = solve_xi_coefficients(zeta);
        std::vector<std::vector<double>> rows;
        for (const auto& row : xi.rows)
          rows.emplace_back(row.begin(), row.begin() + zeta);
        return rows;
      },
      py::arg("zeta"));
  m.def(
      "riemann_solve",
      [](std::tuple<double, double, double> left, std::tuple<double, double, double> right,
         double gamma) {
        RiemannProblem pb;
        pb.left = {std::get<0>(left), std::get<1>(left), std::get<2>(left)};
        pb.right = {std::get<0>(right), std::get<1>(right), std::get<2>(right)};
        pb.gamma = gamma;
        const StarState star = solve_star_state(pb);
        auto name = [](WaveType w) {
          return w == WaveType::shock ? "shock"
                                      : (w == WaveType::rarefaction ? "rarefaction" : "none");
        };
        return py::dict(py::arg("p_star") = star.p, py::arg("u_star") = star.u,
                        py::arg("left_wave") = name(star.left_wave),
                        py::arg("right_wave") = name(star.right_wave),
                        py::arg("rho_left_star") = star.rho_left,
                        py::arg("rho_right_star") = star.rho_right,
                        py::arg("right_shock_speed") = star.right_head,
                        py::arg("left_head_speed") = star.left_head);
      },
      py::arg("left"), py::arg("right"), py::arg("gamma") = 1.4,
      "states are (rho, u, p) triples");
  m.def(
      "riemann_sample",
      [](std::tuple<double, double, double> left, std::tuple<double, double, double> right,
         double gamma, double xi) {
        RiemannProblem pb;
        pb.left = {std::get<0>(left), std::get<1>(left), std::get<2>(left)};
        pb.right = {std::get<0>(right), std::get<1>(right), std::get<2>(right)};
        pb.gamma = gamma;
        const RiemannState s = sample(pb, solve_star_state(pb), xi);
        return std::make_tuple(s.rho, s.u, s.p);
      },
      py::arg("left"), py::arg("right"), py::arg("gamma"), py::arg("xi"),
      "sample the self-similar solution at speed xi = x/t");
}
