#ifndef STAGFV_FIELDS_HPP
#define STAGFV_FIELDS_HPP

#include <functional>

#include "stagfv/core.hpp"

namespace stagfv {

using ScalarField = std::function<double(Vec2)>;
using VectorField = std::function<Vec2(Vec2)>;

// Analytic or piecewise-constant initial data (rho0, e0, u0).
struct InitialData {
  ScalarField rho0;
  ScalarField e0;
  VectorField u0;
};

// Primitive state (rho, u, p) of one side of a discontinuity.
struct PiecewiseSide {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

InitialData uniform_initial(double rho, double e, Vec2 u);

// 1D Riemann data: left primitives for x < x0, right for x > x0; the internal
// energy is recovered from p = (gamma-1) rho e.
InitialData piecewise_initial(const PiecewiseSide& left, const PiecewiseSide& right,
                              double gamma, double x0);

InitialData sod_initial(double gamma);

// Smooth 2D data on [0,1]^2 with u.n = 0 on the walls.
InitialData smooth2d_initial(double gamma);

// Smooth space-time fields used by the weak-consistency probes: a discrete
// trajectory is produced by sampling them on a mesh/time grid, so the limit
// fields entering the reference integrals are known in closed form.
struct ManufacturedFields {
  std::function<double(Vec2, double)> rho;
  std::function<Vec2(Vec2, double)> u;
  std::function<double(Vec2, double)> z;
};

// Defined on [0,1]; velocity vanishes at both ends.
ManufacturedFields manufactured_smooth_1d();

}  // namespace stagfv

#endif
