#include "stagfv/fields.hpp"

#include <cmath>

namespace stagfv {

InitialData uniform_initial(double rho, double e, Vec2 u) {
  return {[rho](Vec2) { return rho; }, [e](Vec2) { return e; }, [u](Vec2) { return u; }};
}

InitialData piecewise_initial(const PiecewiseSide& left, const PiecewiseSide& right,
                              double gamma, double x0) {
  if (!(left.rho > 0.0) || !(right.rho > 0.0))
    throw ConfigError("piecewise initial data: densities must be positive");
  if (!(left.p > 0.0) || !(right.p > 0.0))
    throw ConfigError("piecewise initial data: pressures must be positive");
  const double e_left = left.p / ((gamma - 1.0) * left.rho);
  const double e_right = right.p / ((gamma - 1.0) * right.rho);
  InitialData data;
  data.rho0 = [=](Vec2 x) { return x.x < x0 ? left.rho : right.rho; };
  data.e0 = [=](Vec2 x) { return x.x < x0 ? e_left : e_right; };
  data.u0 = [=](Vec2 x) { return Vec2{x.x < x0 ? left.u : right.u, 0.0}; };
  return data;
}

InitialData sod_initial(double gamma) {
  return piecewise_initial({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, gamma, 0.5);
}

InitialData smooth2d_initial(double gamma) {
  const double pi = std::acos(-1.0);
  InitialData data;
  data.rho0 = [pi](Vec2 x) { return 1.0 + 0.2 * std::sin(pi * x.x) * std::sin(pi * x.y); };
  data.u0 = [pi](Vec2 x) {
    return Vec2{0.1 * std::sin(pi * x.x) * std::cos(pi * x.y),
                -0.1 * std::cos(pi * x.x) * std::sin(pi * x.y)};
  };
  data.e0 = [pi, gamma, rho0 = data.rho0](Vec2 x) {
    const double p = 1.0 + 0.1 * std::cos(pi * x.x) * std::cos(pi * x.y);
    return p / ((gamma - 1.0) * rho0(x));
  };
  return data;
}

ManufacturedFields manufactured_smooth_1d() {
  const double pi = std::acos(-1.0);
  ManufacturedFields f;
  f.rho = [pi](Vec2 x, double t) { return 1.0 + 0.5 * std::sin(2.0 * pi * (x.x - 0.3 * t)); };
  f.u = [pi](Vec2 x, double t) {
    return Vec2{0.5 * std::sin(pi * x.x) * (1.0 + 0.5 * std::cos(2.0 * pi * t)), 0.0};
  };
  f.z = [u = f.u](Vec2 x, double t) { return u(x, t).x; };
  return f;
}

}  // namespace stagfv
