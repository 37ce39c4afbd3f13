#ifndef STAGFV_SCHEME_HPP
#define STAGFV_SCHEME_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stagfv/fluxes.hpp"
#include "stagfv/mesh.hpp"
#include "stagfv/state.hpp"

namespace stagfv {

// Kinetic-energy remainders R_{sigma,i} of the last completed step and the
// corrective source S_K they induce in the next internal-energy update.
// step_index is the time level the entries belong to (S^0 = 0).
struct CorrectiveSource {
  std::vector<double> S;    // per cell
  std::vector<Vec2> R;      // per face, per component
  long step_index = 0;
};

CorrectiveSource zero_source(const StaggeredMesh& mesh);

struct StepConfig {
  double cfl = 0.4;
  InterpolantChoice interp;
  double t_end = 0.0;
  long max_steps = 1000000;
  // Pre-scan the run with the CFL bound and repeat it with a constant step;
  // the cross-step energy identities hold in flux form only for a uniform
  // time partition.
  bool uniform_dt = true;
};

// CFL-limited step: smallest volume/(max face signal) over primal cells and
// over dual cells that carry an evolved velocity component, scaled by cfl
// and capped by dt_max.
double compute_dt(const StaggeredMesh& mesh, const State& state, const GasConfig& gas,
                  double cfl, double dt_max);

struct StepResult {
  State state;              // level n+1
  CorrectiveSource source;  // S^{n+1}, R^{n+1}
  FluxSet fluxes;           // level-n fluxes used by the update
};

// One explicit step: primal fluxes, mass update, internal energy with the
// carried source S^n, EOS, dual fluxes, momentum, then R^{n+1} and S^{n+1}.
StepResult step(const StaggeredMesh& mesh, const State& state, const CorrectiveSource& source,
                const GasConfig& gas, const InterpolantChoice& choice, double dt);

// Everything a per-step observer may want to inspect; references are only
// valid during the callback.
struct StepRecord {
  long n = 0;  // index of the level being advanced
  double dt = 0.0;
  const State& before;
  const State& after;
  const FluxSet& fluxes;                  // level n
  const CorrectiveSource& source_before;  // S^n
  const CorrectiveSource& source_after;   // S^{n+1}, R^{n+1}
};

using StepObserver = std::function<void(const StepRecord&)>;

struct SolverFailure {
  std::string message;
  long step = 0;
};

struct Trajectory {
  std::vector<State> snapshots;  // at the requested output times, in order
  State final_state;
  CorrectiveSource final_source;
  long steps = 0;
  std::optional<SolverFailure> failure;
};

// Advances to t_end (or max_steps), recording a snapshot at the first step
// whose end time reaches each requested output time.  A positivity failure
// aborts the run and is reported in the returned trajectory.
Trajectory run(const StaggeredMesh& mesh, const State& initial, const GasConfig& gas,
               const StepConfig& config, const std::vector<double>& output_times = {},
               const StepObserver& observer = nullptr);

}  // namespace stagfv

#endif
