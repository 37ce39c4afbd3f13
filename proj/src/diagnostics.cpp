#include "stagfv/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace stagfv {

std::vector<double> reconstruct_cell_product(const StaggeredMesh& mesh,
                                             const std::vector<double>& rho_dual,
                                             const std::vector<double>& z_face) {
  std::vector<double> out(mesh.n_cells(), 0.0);
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const Cell& cell = mesh.cells[k];
    double sum = 0.0;
    for (int s = 0; s < cell.n_faces; ++s) {
      const int f = cell.faces[s];
      sum += 0.5 * mesh.faces[f].vol_dual * rho_dual[f] * z_face[f];
    }
    out[k] = sum / cell.volume;
  }
  return out;
}

FaceFluxReconstruction reconstruct_face_flux(const StaggeredMesh& mesh,
                                             const std::vector<double>& dual_mass,
                                             const std::vector<double>& z_dual) {
  FaceFluxReconstruction rec;
  rec.half_in.assign(mesh.n_faces(), 0.0);
  rec.half_out.assign(mesh.n_faces(), 0.0);
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const int k = mesh.faces[f].cell_in;
    for (const DualIncidence& inc : mesh.face_duals[f]) {
      const DualFace& d = mesh.dual_faces[inc.dual_face];
      const double carried = inc.sign * dual_mass[inc.dual_face] * z_dual[inc.dual_face];
      if (d.cell == k)
        rec.half_in[f] += carried;
      else
        rec.half_out[f] += carried;
    }
  }
  return rec;
}

std::vector<double> dual_convection(const StaggeredMesh& mesh,
                                    const std::vector<double>& rho_dual0,
                                    const std::vector<double>& z0,
                                    const std::vector<double>& rho_dual1,
                                    const std::vector<double>& z1,
                                    const std::vector<double>& dual_mass,
                                    const std::vector<double>& z_dual, double dt) {
  std::vector<double> out(mesh.n_faces(), 0.0);
  for (int f = 0; f < mesh.n_faces(); ++f) {
    double conv = mesh.faces[f].vol_dual / dt * (rho_dual1[f] * z1[f] - rho_dual0[f] * z0[f]);
    for (const DualIncidence& inc : mesh.face_duals[f])
      conv += inc.sign * dual_mass[inc.dual_face] * z_dual[inc.dual_face];
    out[f] = conv;
  }
  return out;
}

ConvectionEquivalence primal_convection_residual(
    const StaggeredMesh& mesh, const std::vector<double>& rho_dual0,
    const std::vector<double>& z0, const std::vector<double>& rho_dual1,
    const std::vector<double>& z1, const std::vector<double>& dual_mass,
    const std::vector<double>& z_dual, double dt) {
  const std::vector<double> per_face =
      dual_convection(mesh, rho_dual0, z0, rho_dual1, z1, dual_mass, z_dual, dt);
  const std::vector<double> rz0 = reconstruct_cell_product(mesh, rho_dual0, z0);
  const std::vector<double> rz1 = reconstruct_cell_product(mesh, rho_dual1, z1);
  const FaceFluxReconstruction g = reconstruct_face_flux(mesh, dual_mass, z_dual);

  ConvectionEquivalence eq;
  eq.face_form.assign(mesh.n_cells(), 0.0);
  eq.flux_form.assign(mesh.n_cells(), 0.0);
  eq.rel_diff.assign(mesh.n_cells(), 0.0);
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const Cell& cell = mesh.cells[k];
    const double weight = cell.volume / dt;
    double face_form = 0.0;
    double flux_form = weight * (rz1[k] - rz0[k]);
    double scale = std::max(std::abs(weight * rz1[k]), std::abs(weight * rz0[k]));
    for (int s = 0; s < cell.n_faces; ++s) {
      const int f = cell.faces[s];
      face_form += 0.5 * per_face[f];
      const double gk = g.from(mesh, f, k);
      flux_form += gk;
      scale = std::max({scale, std::abs(per_face[f]), std::abs(gk)});
    }
    eq.face_form[k] = face_form;
    eq.flux_form[k] = flux_form;
    eq.rel_diff[k] = relative_residual(face_form - flux_form, scale);
    eq.max_rel_diff = std::max(eq.max_rel_diff, eq.rel_diff[k]);
  }
  return eq;
}

std::vector<double> dual_mass_relative_residual(const StaggeredMesh& mesh,
                                                const std::vector<double>& rho_dual0,
                                                const std::vector<double>& rho_dual1,
                                                const std::vector<double>& dual_mass, double dt) {
  std::vector<double> out(mesh.n_faces(), 0.0);
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const double weight = mesh.faces[f].vol_dual / dt;
    double sum = weight * (rho_dual1[f] - rho_dual0[f]);
    // scale on the expanded summands: the updated densities themselves round
    // at ulp level, which bounds how well the balance can close
    double scale = std::max(std::abs(weight * rho_dual1[f]), std::abs(weight * rho_dual0[f]));
    for (const DualIncidence& inc : mesh.face_duals[f]) {
      const double flux = inc.sign * dual_mass[inc.dual_face];
      sum += flux;
      scale = std::max(scale, std::abs(flux));
    }
    out[f] = relative_residual(sum, scale);
  }
  return out;
}

std::vector<Vec2> kinetic_identity_relative_residual(const StaggeredMesh& mesh,
                                                     const State& before, const State& after,
                                                     const FluxSet& fluxes,
                                                     const CorrectiveSource& source_after,
                                                     double dt) {
  const std::vector<double> rho_dual1 = dual_density(mesh, after.rho);
  const std::vector<Vec2> grad_p = pressure_gradient(mesh, after.p);

  std::vector<Vec2> flux_sq(mesh.n_faces(), Vec2{});  // sum_eps F u_eps^2, per component
  for (std::size_t e = 0; e < mesh.dual_faces.size(); ++e) {
    const DualFace& d = mesh.dual_faces[e];
    for (int i = 0; i < mesh.dim; ++i) {
      const double carried = fluxes.dual_mass[e] * fluxes.u_dual_face[e][i] * fluxes.u_dual_face[e][i];
      flux_sq[d.face_a][i] += carried;
      flux_sq[d.face_b][i] -= carried;
    }
  }

  std::vector<Vec2> out(mesh.n_faces(), Vec2{});
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const Face& face = mesh.faces[f];
    const double weight = 0.5 * face.vol_dual / dt;
    for (int i = 0; i < mesh.dim; ++i) {
      const double level1 = weight * rho_dual1[f] * after.u[f][i] * after.u[f][i];
      const double level0 = weight * fluxes.rho_dual[f] * before.u[f][i] * before.u[f][i];
      const double t_flux = 0.5 * flux_sq[f][i];
      const double t_press = face.vol_dual * grad_p[f][i] * after.u[f][i];
      const double t_rem = source_after.R[f][i];
      const double sum = (level1 - level0) + t_flux + t_press + t_rem;
      const double scale = std::max({std::abs(level1), std::abs(level0), std::abs(t_flux),
                                     std::abs(t_press), std::abs(t_rem)});
      out[f][i] = relative_residual(sum, scale);
    }
  }
  return out;
}

std::vector<double> kinetic_cell_energy(const StaggeredMesh& mesh,
                                        const std::vector<double>& rho_dual,
                                        const std::vector<Vec2>& u) {
  std::vector<double> out(mesh.n_cells(), 0.0);
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const Cell& cell = mesh.cells[k];
    double sum = 0.0;
    for (int s = 0; s < cell.n_faces; ++s) {
      const int f = cell.faces[s];
      const double u2 = u[f].dot(u[f]);
      sum += 0.25 * mesh.faces[f].vol_dual * rho_dual[f] * u2;
    }
    out[k] = sum / cell.volume;
  }
  return out;
}

std::vector<double> total_energy_relative_residual(const StaggeredMesh& mesh, const State& s0,
                                                   const State& s1, const State& s2,
                                                   const FluxSet& fx0, const FluxSet& fx1,
                                                   double dt0, double dt1) {
  const std::vector<double> ekin0 = kinetic_cell_energy(mesh, fx0.rho_dual, s0.u);
  const std::vector<double> ekin1 = kinetic_cell_energy(mesh, fx1.rho_dual, s1.u);

  // kinetic flux: G with z_eps = |u_eps|^2 / 2 built from the level-n
  // convected components
  std::vector<double> ekin_dual(mesh.dual_faces.size());
  for (std::size_t e = 0; e < mesh.dual_faces.size(); ++e)
    ekin_dual[e] = 0.5 * fx0.u_dual_face[e].dot(fx0.u_dual_face[e]);
  const FaceFluxReconstruction g_kin = reconstruct_face_flux(mesh, fx0.dual_mass, ekin_dual);

  std::vector<double> out(mesh.n_cells(), 0.0);
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const Cell& cell = mesh.cells[k];
    const double level_e2 = cell.volume / dt1 * s2.rho[k] * s2.e[k];
    const double level_e1 = cell.volume / dt1 * s1.rho[k] * s1.e[k];
    const double level_k1 = cell.volume / dt0 * ekin1[k];
    const double level_k0 = cell.volume / dt0 * ekin0[k];
    double sum = (level_e2 - level_e1) + (level_k1 - level_k0);
    double scale = std::max({std::abs(level_e2), std::abs(level_e1), std::abs(level_k1),
                             std::abs(level_k0)});
    for (int s = 0; s < cell.n_faces; ++s) {
      const int f = cell.faces[s];
      const Face& face = mesh.faces[f];
      const double t_flux_e = fx1.mass_from(mesh, f, k) * fx1.e_face[f];
      const double t_flux_k = g_kin.from(mesh, f, k);
      double t_press = 0.0;
      if (!face.boundary()) {
        const int l = mesh.other_cell(f, k);
        t_press = face.area * 0.5 * (s1.p[k] + s1.p[l]) * s1.u[f].dot(mesh.normal_from(f, k));
      }
      sum += t_flux_e + t_flux_k + t_press;
      scale = std::max({scale, std::abs(t_flux_e), std::abs(t_flux_k), std::abs(t_press)});
    }
    out[k] = relative_residual(sum, scale);
  }
  return out;
}

double total_mass(const StaggeredMesh& mesh, const std::vector<double>& rho) {
  double sum = 0.0;
  for (int k = 0; k < mesh.n_cells(); ++k) sum += mesh.cells[k].volume * rho[k];
  return sum;
}

double shifted_total_energy(const StaggeredMesh& mesh, const State& next,
                            const std::vector<double>& rho_dual, const std::vector<Vec2>& u) {
  const std::vector<double> ekin = kinetic_cell_energy(mesh, rho_dual, u);
  double sum = 0.0;
  for (int k = 0; k < mesh.n_cells(); ++k)
    sum += mesh.cells[k].volume * (next.rho[k] * next.e[k] + ekin[k]);
  return sum;
}

std::pair<double, double> translate_differences(
    const StaggeredMesh& mesh, const std::vector<std::vector<double>>& cell_fields,
    const std::vector<std::vector<double>>& face_fields, const std::vector<double>& dts) {
  double primal = 0.0;
  for (std::size_t n = 0; n < cell_fields.size(); ++n) {
    double level = 0.0;
    for (int f = 0; f < mesh.n_faces(); ++f) {
      const Face& face = mesh.faces[f];
      if (face.boundary()) continue;
      level += face.vol_dual * std::abs(cell_fields[n][face.cell_in] - cell_fields[n][face.cell_out]);
    }
    primal += dts[n] * level;
  }
  double dual = 0.0;
  for (std::size_t n = 0; n < face_fields.size(); ++n) {
    double level = 0.0;
    for (int k = 0; k < mesh.n_cells(); ++k) {
      const Cell& cell = mesh.cells[k];
      double pairs = 0.0;
      for (int s = 0; s < cell.n_faces; ++s)
        for (int r = s + 1; r < cell.n_faces; ++r)
          pairs += std::abs(face_fields[n][cell.faces[s]] - face_fields[n][cell.faces[r]]);
      level += cell.volume * pairs;
    }
    dual += dts[n] * level;
  }
  return {primal, dual};
}

}  // namespace stagfv
