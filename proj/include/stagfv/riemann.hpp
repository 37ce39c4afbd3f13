#ifndef STAGFV_RIEMANN_HPP
#define STAGFV_RIEMANN_HPP

#include "stagfv/core.hpp"

namespace stagfv {

struct RiemannState {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

struct RiemannProblem {
  RiemannState left;
  RiemannState right;
  double gamma = 1.4;
  double x0 = 0.0;  // diaphragm position
};

enum class WaveType { none, shock, rarefaction };

struct StarState {
  double p = 0.0;
  double u = 0.0;
  WaveType left_wave = WaveType::none;
  WaveType right_wave = WaveType::none;
  double rho_left = 0.0;   // density between the left wave and the contact
  double rho_right = 0.0;  // density between the contact and the right wave
  // wave speeds: head == tail for shocks
  double left_head = 0.0;
  double left_tail = 0.0;
  double right_head = 0.0;
  double right_tail = 0.0;
};

// Safeguarded Newton (bisection fallback) on the two-wave pressure function,
// two-rarefaction initial guess; throws SolverError on vacuum.
StarState solve_star_state(const RiemannProblem& problem);

// Self-similar solution at speed xi = (x - x0)/t, including rarefaction fans.
RiemannState sample(const RiemannProblem& problem, const StarState& star, double xi);

}  // namespace stagfv

#endif
