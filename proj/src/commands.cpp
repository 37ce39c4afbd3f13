#include "stagfv/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <vector>

#include "stagfv/riemann.hpp"
#include "stagfv/weakform.hpp"

namespace stagfv {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw SolverError("cannot open output file '" + path.string() + "'");
  return os;
}

// Density of the numeric solution minus the sampled exact solution, in L1.
double l1_density_error(const StaggeredMesh& mesh, const State& state,
                        const RiemannProblem& problem, const StarState& star, double time) {
  double err = 0.0;
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const double x = mesh.cells[k].centroid.x;
    const RiemannState exact = sample(problem, star, (x - problem.x0) / time);
    err += mesh.cells[k].volume * std::abs(state.rho[k] - exact.rho);
  }
  return err;
}

// Right-shock position from the 50% density-jump crossing, scanning from the
// right end of the domain.
double measured_shock_position(const StaggeredMesh& mesh, const State& state,
                               const StarState& star, const RiemannProblem& problem) {
  const double level = 0.5 * (star.rho_right + problem.right.rho);
  const int n = mesh.n_cells();
  for (int k = n - 1; k > 0; --k) {
    if (state.rho[k] < level && state.rho[k - 1] >= level) {
      const double x0 = mesh.cells[k - 1].centroid.x;
      const double x1 = mesh.cells[k].centroid.x;
      const double w = (level - state.rho[k - 1]) / (state.rho[k] - state.rho[k - 1]);
      return x0 + w * (x1 - x0);
    }
  }
  return mesh.cells[n - 1].centroid.x;
}

int run_impl(const RunConfig& config, std::ostream& log, bool force_audit) {
  const StaggeredMesh mesh = mesh_from_config(config);
  log << mesh_summary(mesh);

  const GasConfig gas{config.gamma};
  const State initial = initialize(mesh, initial_data_from_config(config), gas);

  StepConfig sc;
  sc.cfl = config.cfl;
  sc.interp = config.interp;
  sc.t_end = config.t_end;
  sc.max_steps = config.max_steps;
  sc.uniform_dt = config.uniform_dt;
  if (sc.interp.rho == Interp::centered || sc.interp.e == Interp::centered ||
      sc.interp.velocity == Interp::centered)
    log << "warning: centered interpolants carry no positivity guarantee\n";

  std::filesystem::create_directories(config.output_dir);
  const bool audit = force_audit || config.audit;
  Auditor auditor(mesh);
  StepObserver observer;
  if (audit) observer = std::ref(auditor);

  std::vector<double> targets = config.output_times;
  if (targets.empty()) targets.push_back(config.t_end);
  std::sort(targets.begin(), targets.end());
  const Trajectory traj = run(mesh, initial, gas, sc, targets, observer);

  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const std::filesystem::path path =
        std::filesystem::path(config.output_dir) / fields_file_name(targets[i]);
    std::ofstream os = open_output(path);
    write_fields_csv(os, mesh, traj.snapshots[i]);
    log << "wrote " << path.string() << " (t=" << fmt_short(traj.snapshots[i].t) << ")\n";
  }
  if (audit) {
    const AuditReport report = auditor.finish();
    const std::filesystem::path path = std::filesystem::path(config.output_dir) / "audit.csv";
    std::ofstream os = open_output(path);
    report.write_csv(os);
    log << "wrote " << path.string() << "\n" << report.summary();
  }
  log << "completed " << traj.steps << " steps, t=" << fmt_short(traj.final_state.t) << "\n";

  if (traj.failure) {
    log << "solver error: " << traj.failure->message << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

std::string fields_file_name(double time) {
  return "fields_t" + fmt_short(time) + ".csv";
}

void write_fields_csv(std::ostream& os, const StaggeredMesh& mesh, const State& state) {
  os << "# t=" << fmt(state.t) << " step=" << state.step_index << '\n';
  os << "# cells\n";
  os << (mesh.dim == 1 ? "x,rho,e,p" : "x,y,rho,e,p") << '\n';
  for (int k = 0; k < mesh.n_cells(); ++k) {
    os << fmt(mesh.cells[k].centroid.x);
    if (mesh.dim == 2) os << ',' << fmt(mesh.cells[k].centroid.y);
    os << ',' << fmt(state.rho[k]) << ',' << fmt(state.e[k]) << ',' << fmt(state.p[k]) << '\n';
  }
  os << "# faces\n";
  os << (mesh.dim == 1 ? "x,ux" : "x,y,ux,uy") << '\n';
  for (int f = 0; f < mesh.n_faces(); ++f) {
    os << fmt(mesh.faces[f].center.x);
    if (mesh.dim == 2) os << ',' << fmt(mesh.faces[f].center.y);
    os << ',' << fmt(state.u[f].x);
    if (mesh.dim == 2) os << ',' << fmt(state.u[f].y);
    os << '\n';
  }
}

int cmd_run(const RunConfig& config, std::ostream& log) { return run_impl(config, log, false); }

int cmd_audit(const RunConfig& config, std::ostream& log) { return run_impl(config, log, true); }

int cmd_study(const RunConfig& config, std::ostream& log) {
  std::filesystem::create_directories(config.output_dir);
  const std::filesystem::path study_path = std::filesystem::path(config.output_dir) / "study.csv";
  std::ofstream csv = open_output(study_path);

  const bool riemann_type = config.preset == "sod" || config.preset == "piecewise";
  if (!riemann_type && config.preset != "manufactured")
    throw ConfigError("study: preset must be sod, piecewise or manufactured");
  if (config.levels < 3) throw ConfigError("config key 'levels': study needs >= 3 levels");

  if (riemann_type) {
    RiemannProblem problem;
    problem.gamma = config.gamma;
    problem.x0 = config.preset == "sod" ? 0.5 : config.interface_pos;
    const PiecewiseSide l = config.preset == "sod" ? PiecewiseSide{1.0, 0.0, 1.0} : config.left;
    const PiecewiseSide r =
        config.preset == "sod" ? PiecewiseSide{0.125, 0.0, 0.1} : config.right;
    problem.left = {l.rho, l.u, l.p};
    problem.right = {r.rho, r.u, r.p};
    const StarState star = solve_star_state(problem);
    const bool has_right_shock = star.right_wave == WaveType::shock;
    const double shock_exact = problem.x0 + star.right_head * config.t_end;

    log << "level nx      h        L1(rho)      rate   shock_pos  shock_speed shock_err_rel\n";
    csv << "level,nx,h,l1_rho,rate,shock_pos,shock_speed,shock_err_rel\n";
    double prev_err = 0.0;
    for (int level = 0; level < config.levels; ++level) {
      const StaggeredMesh mesh = mesh_from_config(config, level);
      const GasConfig gas{config.gamma};
      const State initial = initialize(mesh, initial_data_from_config(config), gas);
      StepConfig sc;
      sc.cfl = config.cfl;
      sc.interp = config.interp;
      sc.t_end = config.t_end;
      sc.max_steps = config.max_steps;
      sc.uniform_dt = config.uniform_dt;
      const Trajectory traj = run(mesh, initial, gas, sc);
      if (traj.failure) {
        log << "solver error at level " << level << ": " << traj.failure->message << "\n";
        return 3;
      }
      const double err =
          l1_density_error(mesh, traj.final_state, problem, star, config.t_end);
      const double rate = level > 0 ? std::log2(prev_err / err) : 0.0;
      double shock_pos = 0.0, shock_speed = 0.0, shock_err = 0.0;
      if (has_right_shock) {
        shock_pos = measured_shock_position(mesh, traj.final_state, star, problem);
        shock_speed = (shock_pos - problem.x0) / config.t_end;
        shock_err = std::abs(shock_pos - shock_exact) / std::abs(shock_exact);
      }
      const double h = regularity(mesh).h;
      char line[160];
      std::snprintf(line, sizeof line, "%5d %6d %8.5f %12.5e %6.2f %11.6f %10.5f %13.4e\n", level,
                    mesh.n_cells(), h, err, rate, shock_pos, shock_speed, shock_err);
      log << line;
      csv << level << ',' << mesh.n_cells() << ',' << fmt(h) << ',' << fmt(err) << ','
          << fmt(rate) << ',' << fmt(shock_pos) << ',' << fmt(shock_speed) << ','
          << fmt(shock_err) << '\n';
      prev_err = err;
    }
    if (has_right_shock)
      log << "exact right-shock position " << fmt_short(shock_exact) << " (speed "
          << fmt_short(star.right_head) << ")\n";
    return 0;
  }

  // manufactured smooth trajectory: weak-form residuals and translate sums
  const ManufacturedFields fields = manufactured_smooth_1d();
  log << "level nx      h        res_dt       rate   res_div      rate   trans_primal trans_dual\n";
  csv << "level,nx,h,res_dt,rate_dt,res_div,rate_div,translate_primal,translate_dual\n";
  double prev_dt = 0.0, prev_div = 0.0;
  for (int level = 0; level < config.levels; ++level) {
    const StaggeredMesh mesh = mesh_from_config(config, level);
    const double h = regularity(mesh).h;
    const SampledTrajectory traj =
        sample_trajectory(mesh, fields, config.t_end, config.dt_over_h * h);
    const TestFunction phi = bump_test_function(mesh, config.t_end);
    const WeakFormProbe probe = weak_form_terms(mesh, traj, fields, phi, config.interp.velocity);
    const auto translates = trajectory_translate_differences(mesh, traj);
    const double rate_dt = level > 0 ? std::log2(prev_dt / probe.res_dt) : 0.0;
    const double rate_div = level > 0 ? std::log2(prev_div / probe.res_div) : 0.0;
    char line[200];
    std::snprintf(line, sizeof line, "%5d %6d %8.5f %12.5e %6.2f %12.5e %6.2f %12.5e %12.5e\n",
                  level, mesh.n_cells(), h, probe.res_dt, rate_dt, probe.res_div, rate_div,
                  translates.first, translates.second);
    log << line;
    csv << level << ',' << mesh.n_cells() << ',' << fmt(h) << ',' << fmt(probe.res_dt) << ','
        << fmt(rate_dt) << ',' << fmt(probe.res_div) << ',' << fmt(rate_div) << ','
        << fmt(translates.first) << ',' << fmt(translates.second) << '\n';
    prev_dt = probe.res_dt;
    prev_div = probe.res_div;
  }
  return 0;
}

int cmd_riemann(const RunConfig& config, std::ostream& log) {
  if (config.preset != "sod" && config.preset != "piecewise")
    throw ConfigError("riemann: preset must be sod or piecewise");
  RiemannProblem problem;
  problem.gamma = config.gamma;
  problem.x0 = config.preset == "sod" ? 0.5 : config.interface_pos;
  const PiecewiseSide l = config.preset == "sod" ? PiecewiseSide{1.0, 0.0, 1.0} : config.left;
  const PiecewiseSide r = config.preset == "sod" ? PiecewiseSide{0.125, 0.0, 0.1} : config.right;
  problem.left = {l.rho, l.u, l.p};
  problem.right = {r.rho, r.u, r.p};

  const StarState star = solve_star_state(problem);
  auto wave_name = [](WaveType w) {
    return w == WaveType::shock ? "shock" : (w == WaveType::rarefaction ? "rarefaction" : "none");
  };
  log << "star state: p*=" << fmt(star.p) << " u*=" << fmt(star.u) << "\n"
      << "left wave:  " << wave_name(star.left_wave) << " speeds [" << fmt_short(star.left_head)
      << ", " << fmt_short(star.left_tail) << "] rho*L=" << fmt_short(star.rho_left) << "\n"
      << "right wave: " << wave_name(star.right_wave) << " speeds ["
      << fmt_short(star.right_tail) << ", " << fmt_short(star.right_head)
      << "] rho*R=" << fmt_short(star.rho_right) << "\n";

  std::filesystem::create_directories(config.output_dir);
  const std::filesystem::path path = std::filesystem::path(config.output_dir) / "riemann.csv";
  std::ofstream os = open_output(path);
  os << "x,rho,u,p\n";
  const double t = config.riemann_time;
  if (!(t > 0.0)) throw ConfigError("config key 'riemann_time': must be positive");
  const int n = std::max(2, config.riemann_samples);
  for (int i = 0; i < n; ++i) {
    const double x = config.xmin + (config.xmax - config.xmin) * i / (n - 1);
    const RiemannState s = sample(problem, star, (x - problem.x0) / t);
    os << fmt(x) << ',' << fmt(s.rho) << ',' << fmt(s.u) << ',' << fmt(s.p) << '\n';
  }
  log << "wrote " << path.string() << " (t=" << fmt_short(t) << ")\n";
  return 0;
}

}  // namespace stagfv
