#include "stagfv/weakform.hpp"

#include <algorithm>
#include <cmath>

namespace stagfv {

namespace {

// C-infinity mollifier on (-1,1), value 1 at the origin.
double bump(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double bump_deriv(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return bump(s) * (-2.0 * s / (q * q));
}

// 4-point Gauss-Legendre on [-1,1].
constexpr double kNodes[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                              0.8611363115940526};
constexpr double kWeights[4] = {0.34785484513745385, 0.6521451548625461, 0.6521451548625461,
                                0.34785484513745385};

// Integral of f over one cell.
template <typename F>
double cell_integral(const StaggeredMesh& mesh, int k, const F& f) {
  const Cell& c = mesh.cells[k];
  if (mesh.dim == 1) {
    const double half = 0.5 * c.volume;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i)
      sum += kWeights[i] * f(Vec2{c.centroid.x + half * kNodes[i], 0.0});
    return half * sum;
  }
  const double hx = mesh.faces[c.faces[1]].center.x - mesh.faces[c.faces[0]].center.x;
  const double hy = mesh.faces[c.faces[3]].center.y - mesh.faces[c.faces[2]].center.y;
  double sum = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      sum += kWeights[i] * kWeights[j] *
             f(Vec2{c.centroid.x + 0.5 * hx * kNodes[i], c.centroid.y + 0.5 * hy * kNodes[j]});
  return 0.25 * hx * hy * sum;
}

template <typename F>
double domain_integral(const StaggeredMesh& mesh, const F& f) {
  double sum = 0.0;
  for (int k = 0; k < mesh.n_cells(); ++k) sum += cell_integral(mesh, k, f);
  return sum;
}

void check_support(const StaggeredMesh& mesh, const TestFunction& phi) {
  const double x_lo = mesh.x_edges.front();
  const double x_hi = mesh.x_edges.back();
  if (!(phi.support_lo.x > x_lo) || !(phi.support_hi.x < x_hi))
    throw ConfigError("weak form: test-function support touches the boundary");
  if (mesh.dim == 2) {
    if (!(phi.support_lo.y > mesh.y_edges.front()) || !(phi.support_hi.y < mesh.y_edges.back()))
      throw ConfigError("weak form: test-function support touches the boundary");
  }
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const Cell& c = mesh.cells[k];
    bool adjacent = false;
    for (int s = 0; s < c.n_faces; ++s)
      if (mesh.faces[c.faces[s]].boundary()) adjacent = true;
    if (!adjacent) continue;
    const double half = 0.5 * c.diameter;  // crude cell bounding radius
    const bool outside_x = c.centroid.x + half < phi.support_lo.x ||
                           c.centroid.x - half > phi.support_hi.x;
    const bool outside_y = mesh.dim == 1 || c.centroid.y + half < phi.support_lo.y ||
                           c.centroid.y - half > phi.support_hi.y;
    if (!(outside_x || outside_y))
      throw ConfigError("weak form: mesh too coarse, support reaches a boundary cell");
  }
}

}  // namespace

TestFunction bump_test_function(const StaggeredMesh& mesh, double t_final) {
  const double x_lo = mesh.x_edges.front();
  const double x_hi = mesh.x_edges.back();
  const double cx = 0.5 * (x_lo + x_hi);
  const double rx = 0.35 * (x_hi - x_lo);
  const bool two_d = mesh.dim == 2;
  const double cy = two_d ? 0.5 * (mesh.y_edges.front() + mesh.y_edges.back()) : 0.0;
  const double ry = two_d ? 0.35 * (mesh.y_edges.back() - mesh.y_edges.front()) : 1.0;
  const double t_scale = 0.9 * t_final;

  TestFunction phi;
  phi.support_lo = {cx - rx, cy - ry};
  phi.support_hi = {cx + rx, cy + ry};
  phi.t_support_end = t_scale;
  phi.value = [=](Vec2 x, double t) {
    double v = bump((x.x - cx) / rx) * bump(t / t_scale);
    if (two_d) v *= bump((x.y - cy) / ry);
    return v;
  };
  phi.dt = [=](Vec2 x, double t) {
    double v = bump((x.x - cx) / rx) * bump_deriv(t / t_scale) / t_scale;
    if (two_d) v *= bump((x.y - cy) / ry);
    return v;
  };
  phi.grad = [=](Vec2 x, double t) {
    const double tf = bump(t / t_scale);
    Vec2 g{bump_deriv((x.x - cx) / rx) / rx * tf, 0.0};
    if (two_d) {
      g.x *= bump((x.y - cy) / ry);
      g.y = bump((x.x - cx) / rx) * bump_deriv((x.y - cy) / ry) / ry * tf;
    }
    return g;
  };
  return phi;
}

std::vector<Vec2> test_function_gradient(const StaggeredMesh& mesh,
                                         const std::vector<double>& phi_cell) {
  std::vector<Vec2> out(mesh.n_faces(), Vec2{});
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    if (face.boundary()) continue;
    const double jump = phi_cell[face.cell_out] - phi_cell[face.cell_in];
    out[f] = (face.area / face.vol_dual * jump) * face.normal;
  }
  return out;
}

SampledTrajectory sample_trajectory(const StaggeredMesh& mesh, const ManufacturedFields& fields,
                                    double t_final, double dt_target) {
  if (!(t_final > 0.0) || !(dt_target > 0.0))
    throw ConfigError("sample_trajectory: horizon and step must be positive");
  const long n = std::max<long>(1, std::lround(t_final / dt_target));
  SampledTrajectory traj;
  traj.dt = t_final / n;
  traj.rho.resize(n + 1);
  traj.u.resize(n + 1);
  traj.z.resize(n + 1);
  for (long level = 0; level <= n; ++level) {
    const double t = level * traj.dt;
    auto& rho = traj.rho[level];
    auto& u = traj.u[level];
    auto& z = traj.z[level];
    rho.resize(mesh.n_cells());
    u.resize(mesh.n_faces());
    z.resize(mesh.n_faces());
    for (int k = 0; k < mesh.n_cells(); ++k) rho[k] = fields.rho(mesh.cells[k].centroid, t);
    for (int f = 0; f < mesh.n_faces(); ++f) {
      u[f] = fields.u(mesh.faces[f].center, t);
      if (mesh.dim == 1) u[f].y = 0.0;
      z[f] = fields.z(mesh.faces[f].center, t);
    }
  }
  return traj;
}

WeakFormProbe weak_form_terms(const StaggeredMesh& mesh, const SampledTrajectory& traj,
                              const ManufacturedFields& limits, const TestFunction& phi,
                              Interp interp) {
  check_support(mesh, phi);
  const long n_steps = static_cast<long>(traj.rho.size()) - 1;
  if (n_steps < 1) throw ConfigError("weak form: trajectory needs at least two levels");
  const double dt = traj.dt;

  // reconstructed (rho z)_K per level
  std::vector<std::vector<double>> rz(n_steps + 1);
  for (long n = 0; n <= n_steps; ++n)
    rz[n] = reconstruct_cell_product(mesh, dual_density(mesh, traj.rho[n]), traj.z[n]);

  WeakFormProbe probe;
  for (long n = 0; n < n_steps; ++n) {
    const double t = n * dt;
    // level-n mass fluxes from the sampled fields
    const std::vector<double> rho_face =
        interpolate_face_scalar(mesh, traj.u[n], traj.rho[n], interp);
    std::vector<double> mass(mesh.n_faces(), 0.0);
    for (int f = 0; f < mesh.n_faces(); ++f) {
      const Face& face = mesh.faces[f];
      if (face.boundary()) continue;
      mass[f] = face.area * rho_face[f] * traj.u[n][f].dot(face.normal);
    }
    const std::vector<double> dual = dual_mass_flux(mesh, mass);
    const std::vector<double> z_dual = dual_face_scalar(mesh, traj.z[n], dual, interp);
    const FaceFluxReconstruction g = reconstruct_face_flux(mesh, dual, z_dual);

    for (int k = 0; k < mesh.n_cells(); ++k) {
      const double phi_k = phi.value(mesh.cells[k].centroid, t);
      if (phi_k == 0.0) continue;
      probe.t_dt += mesh.cells[k].volume * (rz[n + 1][k] - rz[n][k]) * phi_k;
      double g_sum = 0.0;
      const Cell& cell = mesh.cells[k];
      for (int s = 0; s < cell.n_faces; ++s) g_sum += g.from(mesh, cell.faces[s], k);
      probe.t_div += dt * phi_k * g_sum;
    }
  }

  // continuous weak-form integrals of the limit fields, trapezoid in time
  auto time_integral = [&](auto&& integrand) {
    double sum = 0.0;
    for (long n = 0; n <= n_steps; ++n) {
      const double w = (n == 0 || n == n_steps) ? 0.5 : 1.0;
      sum += w * dt * integrand(n * dt);
    }
    return sum;
  };
  probe.ref_dt = -time_integral([&](double t) {
    return domain_integral(mesh, [&](Vec2 x) {
      return limits.rho(x, t) * limits.z(x, t) * phi.dt(x, t);
    });
  });
  probe.ref_dt -= domain_integral(mesh, [&](Vec2 x) {
    return limits.rho(x, 0.0) * limits.z(x, 0.0) * phi.value(x, 0.0);
  });
  probe.ref_div = -time_integral([&](double t) {
    return domain_integral(mesh, [&](Vec2 x) {
      return limits.rho(x, t) * limits.z(x, t) * limits.u(x, t).dot(phi.grad(x, t));
    });
  });

  probe.res_dt = std::abs(probe.t_dt - probe.ref_dt);
  probe.res_div = std::abs(probe.t_div - probe.ref_div);
  return probe;
}

std::pair<double, double> trajectory_translate_differences(const StaggeredMesh& mesh,
                                                           const SampledTrajectory& traj) {
  const std::size_t n_steps = traj.rho.size() - 1;
  std::vector<std::vector<double>> cell_fields(traj.rho.begin(), traj.rho.begin() + n_steps);
  std::vector<std::vector<double>> face_fields(traj.z.begin(), traj.z.begin() + n_steps);
  const std::vector<double> dts(n_steps, traj.dt);
  return translate_differences(mesh, cell_fields, face_fields, dts);
}

}  // namespace stagfv
