#ifndef STAGFV_WEAKFORM_HPP
#define STAGFV_WEAKFORM_HPP

#include <functional>
#include <vector>

#include "stagfv/diagnostics.hpp"
#include "stagfv/fields.hpp"
#include "stagfv/mesh.hpp"

namespace stagfv {

// Smooth test function with compact support in Omega x [0,T); derivatives
// supplied analytically.
struct TestFunction {
  std::function<double(Vec2, double)> value;
  std::function<double(Vec2, double)> dt;
  std::function<Vec2(Vec2, double)> grad;
  Vec2 support_lo;
  Vec2 support_hi;
  double t_support_end = 0.0;  // value vanishes for t >= this
};

// Mollifier bump centred in the given box, supported on the middle 70% of
// each axis and on [0, 0.9 T) in time.
TestFunction bump_test_function(const StaggeredMesh& mesh, double t_final);

// Discrete gradient of a cell scalar sampled from the test function:
// (|sigma|/|D_sigma|)(phi_L - phi_K) n_{K,sigma}, zero on the boundary.
std::vector<Vec2> test_function_gradient(const StaggeredMesh& mesh,
                                         const std::vector<double>& phi_cell);

// Discrete trajectory obtained by sampling smooth fields on a uniform time
// partition; levels run from 0 to n_levels-1 = N.
struct SampledTrajectory {
  double dt = 0.0;
  std::vector<std::vector<double>> rho;  // per level, per cell
  std::vector<std::vector<Vec2>> u;      // per level, per face
  std::vector<std::vector<double>> z;    // per level, per face
};

SampledTrajectory sample_trajectory(const StaggeredMesh& mesh, const ManufacturedFields& fields,
                                    double t_final, double dt_target);

struct WeakFormProbe {
  double t_dt = 0.0;        // discrete time-derivative term
  double t_div = 0.0;       // discrete divergence term
  double ref_dt = 0.0;      // continuous weak-form counterparts
  double ref_div = 0.0;
  double res_dt = 0.0;      // |discrete - reference|
  double res_div = 0.0;
};

// Evaluates the discrete weak-form terms of the reconstructed convection
// operator on a sampled trajectory and compares them with the continuous
// integrals of the limit fields (4-point Gauss per axis in space, trapezoid
// on the step grid in time).
WeakFormProbe weak_form_terms(const StaggeredMesh& mesh, const SampledTrajectory& traj,
                              const ManufacturedFields& limits, const TestFunction& phi,
                              Interp interp = Interp::upwind);

// Translate-difference sums of a sampled trajectory (rho on cells, z on
// faces), for the decay diagnostics.
std::pair<double, double> trajectory_translate_differences(const StaggeredMesh& mesh,
                                                           const SampledTrajectory& traj);

}  // namespace stagfv

#endif
