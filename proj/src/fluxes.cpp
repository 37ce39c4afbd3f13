#include "stagfv/fluxes.hpp"

#include <algorithm>
#include <cmath>

namespace stagfv {

namespace {

double minmod(double a, double b) {
  if (a > 0.0 && b > 0.0) return std::min(a, b);
  if (a < 0.0 && b < 0.0) return std::max(a, b);
  return 0.0;
}

double clamp_hull(double v, double a, double b) {
  return std::clamp(v, std::min(a, b), std::max(a, b));
}

// Local index of face f within cell c.
int local_index(const StaggeredMesh& mesh, int f, int c) {
  const Cell& cell = mesh.cells[c];
  for (int s = 0; s < cell.n_faces; ++s)
    if (cell.faces[s] == f) return s;
  return -1;
}

// Cell behind `up` along the axis of face f (for the MUSCL slope); -1 when
// the stencil leaves the domain.
int upstream_cell(const StaggeredMesh& mesh, int f, int up) {
  const int s = local_index(mesh, f, up);
  const int opposite = s ^ 1;  // 0<->1, 2<->3
  const int back_face = mesh.cells[up].faces[opposite];
  return mesh.other_cell(back_face, up);
}

}  // namespace

Interp parse_interp(const std::string& name) {
  if (name == "upwind") return Interp::upwind;
  if (name == "centered") return Interp::centered;
  if (name == "muscl") return Interp::muscl;
  throw ConfigError("unknown interpolant '" + name + "' (expected upwind|centered|muscl)");
}

const char* interp_name(Interp interp) {
  switch (interp) {
    case Interp::upwind: return "upwind";
    case Interp::centered: return "centered";
    default: return "muscl";
  }
}

std::vector<double> interpolate_face_scalar(const StaggeredMesh& mesh,
                                            const std::vector<Vec2>& u,
                                            const std::vector<double>& q, Interp interp) {
  std::vector<double> out(mesh.n_faces());
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    if (face.boundary()) {
      out[f] = q[face.cell_in];
      continue;
    }
    const int k = face.cell_in;
    const int l = face.cell_out;
    switch (interp) {
      case Interp::centered:
        out[f] = 0.5 * (q[k] + q[l]);
        break;
      case Interp::upwind:
        out[f] = u[f].dot(face.normal) >= 0.0 ? q[k] : q[l];
        break;
      case Interp::muscl: {
        const bool from_k = u[f].dot(face.normal) >= 0.0;
        const int up = from_k ? k : l;
        const int down = from_k ? l : k;
        const int far = upstream_cell(mesh, f, up);
        const double slope = far >= 0 ? minmod(q[down] - q[up], q[up] - q[far]) : 0.0;
        out[f] = clamp_hull(q[up] + 0.5 * slope, q[k], q[l]);
        break;
      }
    }
  }
  return out;
}

std::vector<double> primal_mass_flux(const StaggeredMesh& mesh, const State& state,
                                     Interp rho_interp) {
  const std::vector<double> rho_face = interpolate_face_scalar(mesh, state.u, state.rho, rho_interp);
  std::vector<double> flux(mesh.n_faces(), 0.0);
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    if (face.boundary()) continue;  // u.n = 0 on walls
    flux[f] = face.area * rho_face[f] * state.u[f].dot(face.normal);
  }
  return flux;
}

std::vector<double> face_divergence(const StaggeredMesh& mesh, const std::vector<Vec2>& u) {
  std::vector<double> div(mesh.n_cells(), 0.0);
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const Cell& cell = mesh.cells[k];
    double sum = 0.0;
    for (int s = 0; s < cell.n_faces; ++s) {
      const int f = cell.faces[s];
      sum += mesh.faces[f].area * u[f].dot(mesh.normal_from(f, k));
    }
    div[k] = sum / cell.volume;
  }
  return div;
}

std::vector<Vec2> pressure_gradient(const StaggeredMesh& mesh, const std::vector<double>& p) {
  std::vector<Vec2> grad(mesh.n_faces());
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    if (face.boundary()) continue;
    const double jump = p[face.cell_out] - p[face.cell_in];
    grad[f] = (face.area / face.vol_dual * jump) * face.normal;
  }
  return grad;
}

std::vector<double> dual_density(const StaggeredMesh& mesh, const std::vector<double>& rho) {
  std::vector<double> out(mesh.n_faces());
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    if (face.boundary()) {
      out[f] = rho[face.cell_in];
    } else {
      out[f] = (face.vol_half_in * rho[face.cell_in] + face.vol_half_out * rho[face.cell_out]) /
               face.vol_dual;
    }
  }
  return out;
}

std::vector<double> dual_mass_flux(const StaggeredMesh& mesh,
                                   const std::vector<double>& primal_mass) {
  std::vector<double> out(mesh.dual_faces.size(), 0.0);
  for (std::size_t e = 0; e < mesh.dual_faces.size(); ++e) {
    const DualFace& d = mesh.dual_faces[e];
    const Cell& cell = mesh.cells[d.cell];
    const auto& xi = mesh.xi.rows[mesh.xi.row_index(d.local_a, d.local_b)];
    double flux = 0.0;
    for (int s = 0; s < cell.n_faces; ++s) {
      const int f = cell.faces[s];
      const double sign = d.cell == mesh.faces[f].cell_in ? 1.0 : -1.0;
      flux += xi[s] * sign * primal_mass[f];
    }
    out[e] = flux;
  }
  return out;
}

std::vector<double> dual_face_scalar(const StaggeredMesh& mesh, const std::vector<double>& z,
                                     const std::vector<double>& dual_mass, Interp interp) {
  std::vector<double> out(mesh.dual_faces.size());
  for (std::size_t e = 0; e < mesh.dual_faces.size(); ++e) {
    const DualFace& d = mesh.dual_faces[e];
    const double za = z[d.face_a];
    const double zb = z[d.face_b];
    switch (interp) {
      case Interp::centered:
        out[e] = 0.5 * (za + zb);
        break;
      case Interp::upwind:
        out[e] = dual_mass[e] >= 0.0 ? za : zb;
        break;
      case Interp::muscl: {
        const bool from_a = dual_mass[e] >= 0.0;
        const double up = from_a ? za : zb;
        const double down = from_a ? zb : za;
        const int far = from_a ? d.far_face_a : d.far_face_b;
        const double slope = far >= 0 ? minmod(down - up, up - z[far]) : 0.0;
        out[e] = clamp_hull(up + 0.5 * slope, za, zb);
        break;
      }
    }
  }
  return out;
}

std::vector<Vec2> dual_face_velocity(const StaggeredMesh& mesh, const std::vector<Vec2>& u,
                                     const std::vector<double>& dual_mass, Interp interp) {
  std::vector<Vec2> out(mesh.dual_faces.size());
  std::vector<double> comp(mesh.n_faces());
  for (int i = 0; i < mesh.dim; ++i) {
    for (int f = 0; f < mesh.n_faces(); ++f) comp[f] = u[f][i];
    const std::vector<double> conv = dual_face_scalar(mesh, comp, dual_mass, interp);
    for (std::size_t e = 0; e < out.size(); ++e) out[e][i] = conv[e];
  }
  return out;
}

FluxSet assemble_fluxes(const StaggeredMesh& mesh, const State& state,
                        const InterpolantChoice& choice) {
  FluxSet fx;
  fx.rho_face = interpolate_face_scalar(mesh, state.u, state.rho, choice.rho);
  fx.e_face = interpolate_face_scalar(mesh, state.u, state.e, choice.e);
  fx.mass.assign(mesh.n_faces(), 0.0);
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    if (face.boundary()) continue;
    fx.mass[f] = face.area * fx.rho_face[f] * state.u[f].dot(face.normal);
  }
  fx.rho_dual = dual_density(mesh, state.rho);
  fx.dual_mass = dual_mass_flux(mesh, fx.mass);
  fx.u_dual_face = dual_face_velocity(mesh, state.u, fx.dual_mass, choice.velocity);
  return fx;
}

}  // namespace stagfv
