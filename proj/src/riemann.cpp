#include "stagfv/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace stagfv {

namespace {

double sound(const RiemannState& s, double gamma) { return std::sqrt(gamma * s.p / s.rho); }

// Velocity jump across one wave as a function of the star pressure (Toro's
// f_K), together with its derivative.
struct WaveFunction {
  double f = 0.0;
  double df = 0.0;
};

WaveFunction wave_function(double p, const RiemannState& s, double gamma) {
  WaveFunction w;
  const double a = sound(s, gamma);
  if (p > s.p) {  // shock branch
    const double A = 2.0 / ((gamma + 1.0) * s.rho);
    const double B = (gamma - 1.0) / (gamma + 1.0) * s.p;
    const double root = std::sqrt(A / (p + B));
    w.f = (p - s.p) * root;
    w.df = root * (1.0 - 0.5 * (p - s.p) / (p + B));
  } else {  // rarefaction branch
    const double z = (gamma - 1.0) / (2.0 * gamma);
    w.f = 2.0 * a / (gamma - 1.0) * (std::pow(p / s.p, z) - 1.0);
    w.df = std::pow(p / s.p, -(gamma + 1.0) / (2.0 * gamma)) / (s.rho * a);
  }
  return w;
}

double pressure_function(double p, const RiemannProblem& pb) {
  return wave_function(p, pb.left, pb.gamma).f + wave_function(p, pb.right, pb.gamma).f +
         (pb.right.u - pb.left.u);
}

}  // namespace

StarState solve_star_state(const RiemannProblem& pb) {
  if (!(pb.left.rho > 0.0) || !(pb.right.rho > 0.0) || !(pb.left.p > 0.0) || !(pb.right.p > 0.0))
    throw ConfigError("riemann: states must have positive density and pressure");
  if (!(pb.gamma > 1.0)) throw ConfigError("riemann: gamma must be > 1");

  const double gamma = pb.gamma;
  const double a_l = sound(pb.left, gamma);
  const double a_r = sound(pb.right, gamma);
  const double du = pb.right.u - pb.left.u;
  if (2.0 * (a_l + a_r) / (gamma - 1.0) <= du)
    throw SolverError("riemann: initial states generate vacuum");

  // two-rarefaction guess
  const double z = (gamma - 1.0) / (2.0 * gamma);
  double p = std::pow((a_l + a_r - 0.5 * (gamma - 1.0) * du) /
                          (a_l / std::pow(pb.left.p, z) + a_r / std::pow(pb.right.p, z)),
                      1.0 / z);
  p = std::max(p, 1e-14 * std::min(pb.left.p, pb.right.p));

  // bracket: f is increasing, f(0+) < 0 when no vacuum forms
  double lo = 0.0;
  double hi = std::max({p, pb.left.p, pb.right.p});
  while (pressure_function(hi, pb) < 0.0) hi *= 2.0;
  p = std::clamp(p, lo + 1e-30, hi);

  for (int it = 0; it < 200; ++it) {
    const WaveFunction wl = wave_function(p, pb.left, gamma);
    const WaveFunction wr = wave_function(p, pb.right, gamma);
    const double f = wl.f + wr.f + du;
    if (std::abs(f) <= 1e-13 * std::max(1.0, std::abs(du)) && it > 0) break;
    if (f > 0.0)
      hi = p;
    else
      lo = p;
    double next = p - f / (wl.df + wr.df);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
    if (std::abs(next - p) <= 1e-16 * p) {
      p = next;
      break;
    }
    p = next;
  }

  StarState star;
  star.p = p;
  const WaveFunction wl = wave_function(p, pb.left, gamma);
  const WaveFunction wr = wave_function(p, pb.right, gamma);
  star.u = 0.5 * (pb.left.u + pb.right.u) + 0.5 * (wr.f - wl.f);

  const double mu = (gamma - 1.0) / (gamma + 1.0);
  // a contact-only solution leaves p* within round-off of the input pressures
  const double tol_l = 1e-12 * pb.left.p;
  const double tol_r = 1e-12 * pb.right.p;
  if (p > pb.left.p + tol_l) {
    star.left_wave = WaveType::shock;
    const double ratio = p / pb.left.p;
    star.rho_left = pb.left.rho * (ratio + mu) / (mu * ratio + 1.0);
    star.left_head = star.left_tail =
        pb.left.u - a_l * std::sqrt((gamma + 1.0) / (2.0 * gamma) * ratio +
                                    (gamma - 1.0) / (2.0 * gamma));
  } else if (p < pb.left.p - tol_l) {
    star.left_wave = WaveType::rarefaction;
    star.rho_left = pb.left.rho * std::pow(p / pb.left.p, 1.0 / gamma);
    star.left_head = pb.left.u - a_l;
    star.left_tail = star.u - a_l * std::pow(p / pb.left.p, z);
  } else {
    star.left_wave = WaveType::none;
    star.rho_left = pb.left.rho;
    star.left_head = star.left_tail = pb.left.u - a_l;
  }
  if (p > pb.right.p + tol_r) {
    star.right_wave = WaveType::shock;
    const double ratio = p / pb.right.p;
    star.rho_right = pb.right.rho * (ratio + mu) / (mu * ratio + 1.0);
    star.right_head = star.right_tail =
        pb.right.u + a_r * std::sqrt((gamma + 1.0) / (2.0 * gamma) * ratio +
                                     (gamma - 1.0) / (2.0 * gamma));
  } else if (p < pb.right.p - tol_r) {
    star.right_wave = WaveType::rarefaction;
    star.rho_right = pb.right.rho * std::pow(p / pb.right.p, 1.0 / gamma);
    star.right_head = pb.right.u + a_r;
    star.right_tail = star.u + a_r * std::pow(p / pb.right.p, z);
  } else {
    star.right_wave = WaveType::none;
    star.rho_right = pb.right.rho;
    star.right_head = star.right_tail = pb.right.u + a_r;
  }
  return star;
}

RiemannState sample(const RiemannProblem& pb, const StarState& star, double xi) {
  const double gamma = pb.gamma;
  if (xi <= star.u) {  // left of the contact
    const RiemannState& s = pb.left;
    const double a = sound(s, gamma);
    if (star.left_wave == WaveType::shock)
      return xi < star.left_head ? s : RiemannState{star.rho_left, star.u, star.p};
    if (xi <= star.left_head) return s;
    if (xi >= star.left_tail) return RiemannState{star.rho_left, star.u, star.p};
    // inside the left fan
    const double factor = 2.0 / (gamma + 1.0) + (gamma - 1.0) / ((gamma + 1.0) * a) * (s.u - xi);
    return {s.rho * std::pow(factor, 2.0 / (gamma - 1.0)),
            2.0 / (gamma + 1.0) * (a + 0.5 * (gamma - 1.0) * s.u + xi),
            s.p * std::pow(factor, 2.0 * gamma / (gamma - 1.0))};
  }
  const RiemannState& s = pb.right;
  const double a = sound(s, gamma);
  if (star.right_wave == WaveType::shock)
    return xi > star.right_head ? s : RiemannState{star.rho_right, star.u, star.p};
  if (xi >= star.right_head) return s;
  if (xi <= star.right_tail) return RiemannState{star.rho_right, star.u, star.p};
  const double factor = 2.0 / (gamma + 1.0) - (gamma - 1.0) / ((gamma + 1.0) * a) * (s.u - xi);
  return {s.rho * std::pow(factor, 2.0 / (gamma - 1.0)),
          2.0 / (gamma + 1.0) * (-a + 0.5 * (gamma - 1.0) * s.u + xi),
          s.p * std::pow(factor, 2.0 * gamma / (gamma - 1.0))};
}

}  // namespace stagfv
