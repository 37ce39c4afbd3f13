#include "stagfv/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stagfv {

namespace {

void check_finite(const State& state) {
  for (double v : state.rho)
    if (!std::isfinite(v)) throw SolverError("non-finite density at step " + std::to_string(state.step_index));
  for (double v : state.e)
    if (!std::isfinite(v)) throw SolverError("non-finite internal energy at step " + std::to_string(state.step_index));
  for (const Vec2& v : state.u)
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw SolverError("non-finite velocity at step " + std::to_string(state.step_index));
}

}  // namespace

CorrectiveSource zero_source(const StaggeredMesh& mesh) {
  CorrectiveSource src;
  src.S.assign(mesh.n_cells(), 0.0);
  src.R.assign(mesh.n_faces(), Vec2{});
  src.step_index = 0;
  return src;
}

double compute_dt(const StaggeredMesh& mesh, const State& state, const GasConfig& gas,
                  double cfl, double dt_max) {
  check_finite(state);
  if (!(cfl > 0.0)) throw ConfigError("cfl must be positive");

  std::vector<double> c(mesh.n_cells());
  for (int k = 0; k < mesh.n_cells(); ++k) c[k] = sound_speed(state.rho[k], state.p[k], gas);

  double limit = std::numeric_limits<double>::infinity();
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const Cell& cell = mesh.cells[k];
    double signal = 0.0;
    for (int s = 0; s < cell.n_faces; ++s) {
      const int f = cell.faces[s];
      const Face& face = mesh.faces[f];
      const double cf = face.boundary() ? c[face.cell_in]
                                        : std::max(c[face.cell_in], c[face.cell_out]);
      signal = std::max(signal, face.area * (state.u[f].norm() + cf));
    }
    limit = std::min(limit, cell.volume / signal);
  }
  // Dual cells: boundary faces carry no evolved component in 1D.
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    if (face.boundary() && mesh.dim == 1) continue;
    double signal = 0.0;
    for (const DualIncidence& inc : mesh.face_duals[f]) {
      const DualFace& d = mesh.dual_faces[inc.dual_face];
      const double speed = std::max(state.u[d.face_a].norm(), state.u[d.face_b].norm());
      signal = std::max(signal, d.area * (speed + c[d.cell]));
    }
    if (signal > 0.0) limit = std::min(limit, face.vol_dual / signal);
  }
  return std::min(cfl * limit, dt_max);
}

StepResult step(const StaggeredMesh& mesh, const State& state, const CorrectiveSource& source,
                const GasConfig& gas, const InterpolantChoice& choice, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw SolverError("step: invalid dt");
  if (source.step_index != state.step_index)
    throw SolverError("step: corrective source is out of phase with the state");

  StepResult res{state, {}, assemble_fluxes(mesh, state, choice)};
  State& next = res.state;
  const FluxSet& fx = res.fluxes;
  next.t = state.t + dt;
  next.step_index = state.step_index + 1;

  // mass update
  std::vector<double> outflow(mesh.n_cells(), 0.0);   // sum_sigma F_{K,sigma}
  std::vector<double> e_outflow(mesh.n_cells(), 0.0); // sum_sigma F_{K,sigma} e_sigma
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    if (face.boundary()) continue;
    outflow[face.cell_in] += fx.mass[f];
    outflow[face.cell_out] -= fx.mass[f];
    const double fe = fx.mass[f] * fx.e_face[f];
    e_outflow[face.cell_in] += fe;
    e_outflow[face.cell_out] -= fe;
  }
  for (int k = 0; k < mesh.n_cells(); ++k) {
    next.rho[k] = state.rho[k] - dt / mesh.cells[k].volume * outflow[k];
    if (!(next.rho[k] > 0.0)) throw PositivityError("rho", k, next.step_index);
  }

  // internal energy with the carried source; incremental form so a resting
  // uniform state is a bit-exact fixed point
  const std::vector<double> div = face_divergence(mesh, state.u);
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const double vol = mesh.cells[k].volume;
    const double delta = -dt / vol * e_outflow[k] - dt * state.p[k] * div[k] + dt / vol * source.S[k];
    const double drho = next.rho[k] - state.rho[k];
    next.e[k] = state.e[k] + (delta - state.e[k] * drho) / next.rho[k];
    if (!(next.e[k] > 0.0)) throw PositivityError("e", k, next.step_index);
  }
  apply_eos_inplace(next, gas);

  // momentum on the dual mesh, with the pressure gradient at the new level
  const std::vector<double> rho_dual_next = dual_density(mesh, next.rho);
  const std::vector<Vec2> grad_p = pressure_gradient(mesh, next.p);
  std::vector<Vec2> convection(mesh.n_faces(), Vec2{});
  for (std::size_t e = 0; e < mesh.dual_faces.size(); ++e) {
    const DualFace& d = mesh.dual_faces[e];
    const Vec2 carried = fx.dual_mass[e] * fx.u_dual_face[e];
    convection[d.face_a] = convection[d.face_a] + carried;
    convection[d.face_b] = convection[d.face_b] - carried;
  }
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    const double drho = rho_dual_next[f] - fx.rho_dual[f];
    for (int i = 0; i < mesh.dim; ++i) {
      if (face.boundary() && i == face.axis) {
        next.u[f][i] = 0.0;  // wall: the normal unknown stays pinned
        continue;
      }
      const double delta = -dt / face.vol_dual * convection[f][i] - dt * grad_p[f][i];
      next.u[f][i] = state.u[f][i] + (delta - state.u[f][i] * drho) / rho_dual_next[f];
    }
  }

  // kinetic-energy remainder of this step and the source it feeds forward
  res.source.S.assign(mesh.n_cells(), 0.0);
  res.source.R.assign(mesh.n_faces(), Vec2{});
  res.source.step_index = next.step_index;
  std::vector<Vec2> flux_sq(mesh.n_faces(), Vec2{});   // sum_eps F (u_eps - u_sigma)^2
  std::vector<Vec2> flux_lin(mesh.n_faces(), Vec2{});  // sum_eps F (u_eps - u_sigma)
  for (std::size_t e = 0; e < mesh.dual_faces.size(); ++e) {
    const DualFace& d = mesh.dual_faces[e];
    for (int i = 0; i < mesh.dim; ++i) {
      const double ue = fx.u_dual_face[e][i];
      const double da = ue - state.u[d.face_a][i];
      const double db = ue - state.u[d.face_b][i];
      flux_sq[d.face_a][i] += fx.dual_mass[e] * da * da;
      flux_sq[d.face_b][i] -= fx.dual_mass[e] * db * db;
      flux_lin[d.face_a][i] += fx.dual_mass[e] * da;
      flux_lin[d.face_b][i] -= fx.dual_mass[e] * db;
    }
  }
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    for (int i = 0; i < mesh.dim; ++i) {
      const double du = next.u[f][i] - state.u[f][i];
      res.source.R[f][i] = 0.5 * face.vol_dual / dt * rho_dual_next[f] * du * du -
                           0.5 * flux_sq[f][i] + du * flux_lin[f][i];
    }
  }
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const Cell& cell = mesh.cells[k];
    double sum = 0.0;
    for (int s = 0; s < cell.n_faces; ++s)
      for (int i = 0; i < mesh.dim; ++i) sum += res.source.R[cell.faces[s]][i];
    res.source.S[k] = 0.5 * sum;
  }
  return res;
}

namespace {

struct LoopOutcome {
  double dt_min = std::numeric_limits<double>::infinity();
};

// Core time loop; fixed_dt > 0 selects a constant step.
LoopOutcome time_loop(const StaggeredMesh& mesh, const State& initial, const GasConfig& gas,
                      const StepConfig& config, double fixed_dt,
                      const std::vector<double>& output_times, const StepObserver& observer,
                      Trajectory& out) {
  LoopOutcome outcome;
  State current = initial;
  CorrectiveSource source = zero_source(mesh);
  source.step_index = current.step_index;

  std::vector<double> targets = output_times;
  std::sort(targets.begin(), targets.end());
  std::size_t next_target = 0;
  auto reached = [](double t, double target) {
    return t >= target - 1e-12 * std::max(1.0, std::abs(target));
  };
  while (next_target < targets.size() && reached(current.t, targets[next_target])) {
    out.snapshots.push_back(current);
    ++next_target;
  }

  long steps = 0;
  const double t_start = current.t;
  while (current.t < config.t_end - 1e-12 * std::max(1.0, std::abs(config.t_end)) &&
         steps < config.max_steps) {
    double dt;
    if (fixed_dt > 0.0) {
      dt = fixed_dt;
    } else {
      dt = compute_dt(mesh, current, gas, config.cfl, config.t_end - current.t);
      outcome.dt_min = std::min(outcome.dt_min, dt);
    }
    try {
      StepResult result = step(mesh, current, source, gas, config.interp, dt);
      if (fixed_dt > 0.0) result.state.t = t_start + (steps + 1) * fixed_dt;
      if (observer)
        observer(StepRecord{current.step_index, dt, current, result.state, result.fluxes,
                            source, result.source});
      current = std::move(result.state);
      source = std::move(result.source);
    } catch (const SolverError& err) {
      out.failure = SolverFailure{err.what(), current.step_index};
      break;
    }
    ++steps;
    while (next_target < targets.size() && reached(current.t, targets[next_target])) {
      out.snapshots.push_back(current);
      ++next_target;
    }
  }
  out.final_state = std::move(current);
  out.final_source = std::move(source);
  out.steps = steps;
  return outcome;
}

}  // namespace

Trajectory run(const StaggeredMesh& mesh, const State& initial, const GasConfig& gas,
               const StepConfig& config, const std::vector<double>& output_times,
               const StepObserver& observer) {
  validate_gas(gas);
  if (config.t_end < initial.t) throw ConfigError("run: t_end precedes the initial time");

  Trajectory traj;
  if (!config.uniform_dt) {
    time_loop(mesh, initial, gas, config, 0.0, output_times, observer, traj);
    return traj;
  }

  // Scan pass: adaptive CFL steps record the tightest step of the whole run,
  // then the reported run repeats with a uniform partition of [t0, t_end].
  Trajectory scan;
  const LoopOutcome outcome = time_loop(mesh, initial, gas, config, 0.0, {}, nullptr, scan);
  if (!std::isfinite(outcome.dt_min)) {  // no step was taken (t_end == t0)
    time_loop(mesh, initial, gas, config, 0.0, output_times, observer, traj);
    return traj;
  }
  const double span = config.t_end - initial.t;
  const long n_steps = std::max<long>(1, static_cast<long>(std::ceil(span / (0.9 * outcome.dt_min))));
  time_loop(mesh, initial, gas, config, span / n_steps, output_times, observer, traj);
  return traj;
}

}  // namespace stagfv
