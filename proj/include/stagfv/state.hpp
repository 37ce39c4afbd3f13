#ifndef STAGFV_STATE_HPP
#define STAGFV_STATE_HPP

#include <vector>

#include "stagfv/core.hpp"
#include "stagfv/fields.hpp"
#include "stagfv/mesh.hpp"

namespace stagfv {

struct GasConfig {
  double gamma = 1.4;
};

void validate_gas(const GasConfig& gas);

// The complete unknown set of one time level: cell scalars rho, e, p and
// face velocities.  Snapshots are treated as immutable; the stepper produces
// a fresh State per step.
struct State {
  double t = 0.0;
  long step_index = 0;
  std::vector<double> rho;
  std::vector<double> e;
  std::vector<double> p;
  std::vector<Vec2> u;
};

// p_K = (gamma-1) rho_K e_K; throws PositivityError naming the first
// offending cell if rho or e is not positive.
void apply_eos_inplace(State& state, const GasConfig& gas);
State apply_eos(State state, const GasConfig& gas);

double sound_speed(double rho, double p, const GasConfig& gas);

// Cell averages of rho0/e0 and dual-cell averages of u0, by fixed-order
// Gauss quadrature (3 points per axis; half-diamonds integrated separately
// so face-aligned discontinuities are averaged exactly).  The wall condition
// u.n = 0 is enforced on boundary faces.  The EOS is applied.
State initialize(const StaggeredMesh& mesh, const InitialData& data, const GasConfig& gas);

}  // namespace stagfv

#endif
