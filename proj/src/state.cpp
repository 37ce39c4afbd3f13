#include "stagfv/state.hpp"

#include <cmath>

namespace stagfv {

namespace {

// 3-point Gauss-Legendre on [-1,1].
constexpr double kGaussNode = 0.7745966692414834;  // sqrt(3/5)
constexpr double kGaussW0 = 8.0 / 9.0;
constexpr double kGaussW1 = 5.0 / 9.0;

// Averages are accumulated as f(anchor) + sum w_i (f(x_i) - f(anchor)) so
// constant fields are reproduced bit-exactly.
template <typename F>
double interval_average(const F& f, double a, double b, double anchor_value) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double corr = kGaussW1 * 0.5 * (f(mid - half * kGaussNode) - anchor_value);
  corr += kGaussW0 * 0.5 * (f(mid) - anchor_value);
  corr += kGaussW1 * 0.5 * (f(mid + half * kGaussNode) - anchor_value);
  return anchor_value + corr;
}

template <typename F>
double rect_average(const F& f, Vec2 lo, Vec2 hi, double anchor_value) {
  const double nodes[3] = {-kGaussNode, 0.0, kGaussNode};
  const double weights[3] = {kGaussW1, kGaussW0, kGaussW1};
  const Vec2 mid{0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)};
  const Vec2 half{0.5 * (hi.x - lo.x), 0.5 * (hi.y - lo.y)};
  double corr = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Vec2 x{mid.x + half.x * nodes[i], mid.y + half.y * nodes[j]};
      corr += 0.25 * weights[i] * weights[j] * (f(x) - anchor_value);
    }
  return anchor_value + corr;
}

// Degree-2 midpoint rule on a triangle.
template <typename F>
double triangle_mean(const F& f, Vec2 v0, Vec2 v1, Vec2 v2, double anchor_value) {
  const Vec2 m01 = 0.5 * (v0 + v1);
  const Vec2 m12 = 0.5 * (v1 + v2);
  const Vec2 m02 = 0.5 * (v0 + v2);
  return (f(m01) - anchor_value) / 3.0 + (f(m12) - anchor_value) / 3.0 +
         (f(m02) - anchor_value) / 3.0;
}

std::array<Vec2, 2> face_endpoints(const Face& f) {
  Vec2 tangent = f.axis == 0 ? Vec2{0.0, 1.0} : Vec2{1.0, 0.0};
  return {f.center - 0.5 * f.area * tangent, f.center + 0.5 * f.area * tangent};
}

// Average over the dual cell D_sigma; each half-diamond is integrated on its
// own so data with jumps along the face stays exact.
template <typename F>
double dual_average(const StaggeredMesh& mesh, int fid, const F& f) {
  const Face& face = mesh.faces[fid];
  const double anchor = f(face.center);
  if (mesh.dim == 1) {
    const double xk = mesh.cells[face.cell_in].centroid.x;
    const double xs = face.center.x;
    double integral = face.vol_half_in *
                      (interval_average([&](double x) { return f(Vec2{x, 0.0}); },
                                        std::min(xk, xs), std::max(xk, xs), anchor) -
                       anchor);
    if (!face.boundary()) {
      const double xl = mesh.cells[face.cell_out].centroid.x;
      integral += face.vol_half_out *
                  (interval_average([&](double x) { return f(Vec2{x, 0.0}); },
                                    std::min(xl, xs), std::max(xl, xs), anchor) -
                   anchor);
    }
    return anchor + integral / face.vol_dual;
  }
  const auto ends = face_endpoints(face);
  double integral =
      face.vol_half_in * triangle_mean(f, ends[0], ends[1], mesh.cells[face.cell_in].centroid, anchor);
  if (!face.boundary())
    integral += face.vol_half_out *
                triangle_mean(f, ends[0], ends[1], mesh.cells[face.cell_out].centroid, anchor);
  return anchor + integral / face.vol_dual;
}

template <typename F>
double cell_average(const StaggeredMesh& mesh, int cid, const F& f) {
  const Cell& c = mesh.cells[cid];
  const double anchor = f(c.centroid);
  if (mesh.dim == 1) {
    const double half = 0.5 * c.volume;
    return interval_average([&](double x) { return f(Vec2{x, 0.0}); },
                            c.centroid.x - half, c.centroid.x + half, anchor);
  }
  const Face& west = mesh.faces[c.faces[0]];
  const Face& east = mesh.faces[c.faces[1]];
  const Face& south = mesh.faces[c.faces[2]];
  const Face& north = mesh.faces[c.faces[3]];
  return rect_average(f, Vec2{west.center.x, south.center.y},
                      Vec2{east.center.x, north.center.y}, anchor);
}

}  // namespace

void validate_gas(const GasConfig& gas) {
  if (!(gas.gamma > 1.0)) throw ConfigError("gas: gamma must be > 1");
}

void apply_eos_inplace(State& state, const GasConfig& gas) {
  validate_gas(gas);
  state.p.resize(state.rho.size());
  for (std::size_t k = 0; k < state.rho.size(); ++k) {
    if (!(state.rho[k] > 0.0))
      throw PositivityError("rho", static_cast<int>(k), state.step_index);
    if (!(state.e[k] > 0.0))
      throw PositivityError("e", static_cast<int>(k), state.step_index);
    state.p[k] = (gas.gamma - 1.0) * state.rho[k] * state.e[k];
  }
}

State apply_eos(State state, const GasConfig& gas) {
  apply_eos_inplace(state, gas);
  return state;
}

double sound_speed(double rho, double p, const GasConfig& gas) {
  return std::sqrt(gas.gamma * p / rho);
}

State initialize(const StaggeredMesh& mesh, const InitialData& data, const GasConfig& gas) {
  if (!data.rho0 || !data.e0 || !data.u0)
    throw ConfigError("initialize: incomplete initial data");
  validate_gas(gas);

  State state;
  state.rho.resize(mesh.n_cells());
  state.e.resize(mesh.n_cells());
  state.u.resize(mesh.n_faces());

  for (int k = 0; k < mesh.n_cells(); ++k) {
    state.rho[k] = cell_average(mesh, k, data.rho0);
    state.e[k] = cell_average(mesh, k, data.e0);
    if (!std::isfinite(state.rho[k]) || !std::isfinite(state.e[k]))
      throw ConfigError("initialize: initial data undefined in cell " + std::to_string(k));
  }
  for (int f = 0; f < mesh.n_faces(); ++f) {
    Vec2 avg;
    avg.x = dual_average(mesh, f, [&](Vec2 x) { return data.u0(x).x; });
    avg.y = mesh.dim == 2 ? dual_average(mesh, f, [&](Vec2 x) { return data.u0(x).y; }) : 0.0;
    if (!std::isfinite(avg.x) || !std::isfinite(avg.y))
      throw ConfigError("initialize: initial velocity undefined at face " + std::to_string(f));
    if (mesh.faces[f].boundary()) avg[mesh.faces[f].axis] = 0.0;  // wall: u.n = 0
    state.u[f] = avg;
  }

  apply_eos_inplace(state, gas);
  return state;
}

}  // namespace stagfv
