#ifndef STAGFV_CONFIG_HPP
#define STAGFV_CONFIG_HPP

#include <string>
#include <vector>

#include "stagfv/fields.hpp"
#include "stagfv/fluxes.hpp"
#include "stagfv/mesh.hpp"
#include "stagfv/state.hpp"

namespace stagfv {

// Flat key=value run configuration ('#' starts a comment, arrays are
// comma-separated).  Unknown keys are rejected.
struct RunConfig {
  int dim = 1;
  double xmin = 0.0, xmax = 1.0;
  double ymin = 0.0, ymax = 1.0;
  int nx = 100, ny = 1;

  double gamma = 1.4;
  std::string preset = "sod";  // uniform | sod | piecewise | smooth2d | manufactured
  InterpolantChoice interp;
  double cfl = 0.4;
  double t_end = 0.2;
  long max_steps = 1000000;
  bool uniform_dt = true;

  std::vector<double> output_times;
  std::string output_dir = "out";
  bool audit = false;
  int levels = 4;  // refinement study

  // uniform preset
  double rho0 = 1.0, e0 = 1.0;
  Vec2 u0;
  // piecewise preset (1D)
  double interface_pos = 0.5;
  PiecewiseSide left{1.0, 0.0, 1.0};
  PiecewiseSide right{0.125, 0.0, 0.1};
  // manufactured study: dt = dt_over_h * h
  double dt_over_h = 0.4;
  // riemann subcommand
  double riemann_time = 0.2;
  int riemann_samples = 201;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Cross-field checks: gamma and cfl ranges, counts, discontinuities aligned
// with faces, preset/dimension compatibility.  Throws ConfigError naming the
// offending key.
void validate_config(const RunConfig& config);

StaggeredMesh mesh_from_config(const RunConfig& config);
// Mesh for refinement level l (counts scaled by 2^l).
StaggeredMesh mesh_from_config(const RunConfig& config, int level);

InitialData initial_data_from_config(const RunConfig& config);

}  // namespace stagfv

#endif
