#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "stagfv/diagnostics.hpp"
#include "stagfv/fluxes.hpp"

using namespace stagfv;

namespace {

State make_state(const StaggeredMesh& mesh, double rho, double e, const GasConfig& gas) {
  return initialize(mesh, uniform_initial(rho, e, {0.0, 0.0}), gas);
}

State random_state(const StaggeredMesh& mesh, std::mt19937& rng) {
  std::uniform_real_distribution<double> pos(0.5, 2.0);
  std::uniform_real_distribution<double> vel(-1.0, 1.0);
  State s;
  s.rho.resize(mesh.n_cells());
  s.e.resize(mesh.n_cells());
  s.u.resize(mesh.n_faces());
  for (double& r : s.rho) r = pos(rng);
  for (double& e : s.e) e = pos(rng);
  for (int f = 0; f < mesh.n_faces(); ++f) {
    s.u[f] = {vel(rng), mesh.dim == 2 ? vel(rng) : 0.0};
    if (mesh.faces[f].boundary()) s.u[f][mesh.faces[f].axis] = 0.0;
  }
  apply_eos_inplace(s, GasConfig{1.4});
  return s;
}

}  // namespace

TEST_CASE("primal mass flux upwinds with the material velocity") {
  // 2x1 cells on [0,1]x[0,0.5] so the interior face has area 0.5
  const StaggeredMesh mesh = build_mesh(2, {{0.0, 1.0}, {0.0, 0.5}}, {2, 1});
  State s = make_state(mesh, 1.0, 1.0, GasConfig{1.4});
  s.rho = {1.0, 2.0};
  apply_eos_inplace(s, GasConfig{1.4});
  int interior = -1;
  for (int f = 0; f < mesh.n_faces(); ++f)
    if (!mesh.faces[f].boundary()) interior = f;
  REQUIRE(interior >= 0);
  CHECK(mesh.faces[interior].area == doctest::Approx(0.5));

  s.u[interior] = {3.0, 0.0};  // owner is the left cell, normal +x
  auto flux = primal_mass_flux(mesh, s, Interp::upwind);
  CHECK(flux[interior] == doctest::Approx(1.5).epsilon(1e-14));

  s.u[interior] = {-3.0, 0.0};
  flux = primal_mass_flux(mesh, s, Interp::upwind);
  CHECK(flux[interior] == doctest::Approx(-3.0).epsilon(1e-14));

  s.u[interior] = {0.0, 0.0};
  flux = primal_mass_flux(mesh, s, Interp::upwind);
  for (double f : flux) CHECK(f == 0.0);
}

TEST_CASE("face divergence") {
  const StaggeredMesh mesh = build_interval_mesh({0.0, 0.5, 1.0});
  std::vector<Vec2> u(mesh.n_faces(), Vec2{});
  u[1] = {2.0, 0.0};  // velocity at the interior face of cell [0,0.5]
  const auto div = face_divergence(mesh, u);
  CHECK(div[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(div[1] == doctest::Approx(-4.0).epsilon(1e-14));

  // uniform velocity: zero divergence in cells without boundary faces
  const StaggeredMesh fine = build_mesh(1, {{0.0, 1.0}}, {8});
  std::vector<Vec2> uc(fine.n_faces(), Vec2{1.0, 0.0});
  const auto divc = face_divergence(fine, uc);
  for (int k = 1; k + 1 < fine.n_cells(); ++k) CHECK(std::abs(divc[k]) <= 1e-13);

  // unit 2D cell with u.n = +1 on all four faces
  const StaggeredMesh cell = build_mesh(2, {{0.0, 1.0}, {0.0, 1.0}}, {1, 1});
  std::vector<Vec2> ub(cell.n_faces());
  for (int f = 0; f < cell.n_faces(); ++f) ub[f] = cell.faces[f].normal;
  CHECK(face_divergence(cell, ub)[0] == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("pressure gradient and discrete duality") {
  const StaggeredMesh mesh = build_mesh(1, {{0.0, 1.0}}, {4});
  std::vector<double> p(mesh.n_cells(), 2.0);
  for (const Vec2& g : pressure_gradient(mesh, p)) {
    CHECK(g.x == 0.0);
    CHECK(g.y == 0.0);
  }
  p = {1.0, 2.0, 2.0, 2.0};
  const auto grad = pressure_gradient(mesh, p);
  // |D_sigma| (grad p)_sigma = |sigma| (p_L - p_K) n_{K,sigma}
  CHECK(mesh.faces[1].vol_dual * grad[1].x == doctest::Approx(1.0).epsilon(1e-14));

  // transposition property on a 4x4 grid with wall-compatible velocities
  const StaggeredMesh grid = build_mesh(2, {{0.0, 1.0}, {0.0, 1.0}}, {4, 4});
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> pr(grid.n_cells());
  for (double& v : pr) v = 1.0 + 0.5 * dist(rng);
  std::vector<Vec2> u(grid.n_faces());
  for (int f = 0; f < grid.n_faces(); ++f) {
    u[f] = {dist(rng), dist(rng)};
    if (grid.faces[f].boundary()) u[f][grid.faces[f].axis] = 0.0;
  }
  const auto g = pressure_gradient(grid, pr);
  const auto div = face_divergence(grid, u);
  double sum = 0.0;
  double scale = 0.0;
  for (int k = 0; k < grid.n_cells(); ++k) {
    const double term = grid.cells[k].volume * pr[k] * div[k];
    sum += term;
    scale = std::max(scale, std::abs(term));
  }
  for (int f = 0; f < grid.n_faces(); ++f) {
    const double term = grid.faces[f].vol_dual * g[f].dot(u[f]);
    sum += term;
    scale = std::max(scale, std::abs(term));
  }
  CHECK(std::abs(sum) <= 1e-12 * scale);
}

TEST_CASE("dual density") {
  const StaggeredMesh mesh = build_interval_mesh({0.0, 0.5, 2.0});  // cells 0.5 and 1.5
  std::vector<double> rho = {1.0, 2.0};
  const auto rd = dual_density(mesh, rho);
  CHECK(mesh.faces[1].vol_half_in == doctest::Approx(0.25));
  CHECK(mesh.faces[1].vol_half_out == doctest::Approx(0.75));
  CHECK(rd[1] == doctest::Approx(1.75).epsilon(1e-14));
  CHECK(rd[0] == 1.0);  // boundary face carries the cell value
  CHECK(rd[2] == 2.0);

  rho = {3.0, 3.0};
  for (double v : dual_density(mesh, rho)) CHECK(v == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("dual mass fluxes: uniform 1D flow and half-diamond balance") {
  const StaggeredMesh mesh = build_mesh(1, {{0.0, 1.0}}, {4});
  State s = make_state(mesh, 1.0, 1.0, GasConfig{1.4});
  for (int f = 0; f < mesh.n_faces(); ++f)
    if (!mesh.faces[f].boundary()) s.u[f] = {1.0, 0.0};
  const auto mass = primal_mass_flux(mesh, s, Interp::upwind);
  const auto dual = dual_mass_flux(mesh, mass);
  // interior dual faces carry exactly |sigma| for unit density and speed
  for (std::size_t e = 1; e + 1 < mesh.dual_faces.size(); ++e)
    CHECK(dual[e] == doctest::Approx(1.0).epsilon(1e-14));

  // zero primal fluxes map to zero
  const auto none = dual_mass_flux(mesh, std::vector<double>(mesh.n_faces(), 0.0));
  for (double v : none) CHECK(v == 0.0);
}

TEST_CASE("half-diamond balance on a 3x3 grid with random fluxes") {
  const StaggeredMesh mesh = build_mesh(2, {{0.0, 1.0}, {0.0, 1.0}}, {3, 3});
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> mass(mesh.n_faces(), 0.0);
  for (int f = 0; f < mesh.n_faces(); ++f)
    if (!mesh.faces[f].boundary()) mass[f] = dist(rng);
  const auto dual = dual_mass_flux(mesh, mass);

  auto signed_mass = [&](int f, int k) {
    return k == mesh.faces[f].cell_in ? mass[f] : -mass[f];
  };
  for (int k = 0; k < mesh.n_cells(); ++k) {
    const Cell& cell = mesh.cells[k];
    double total = 0.0;
    for (int s = 0; s < cell.n_faces; ++s) total += signed_mass(cell.faces[s], k);
    for (int s = 0; s < cell.n_faces; ++s) {
      const int f = cell.faces[s];
      // dual fluxes leaving D_{K,sigma} inside K, plus the primal flux
      // through sigma itself, balance the cell outflow share
      double lhs = signed_mass(f, k);
      for (const DualIncidence& inc : mesh.face_duals[f]) {
        if (mesh.dual_faces[inc.dual_face].cell != k) continue;
        lhs += inc.sign * dual[inc.dual_face];
      }
      CHECK(std::abs(lhs - total / 4.0) <= 1e-13 * std::max(1.0, std::abs(total)));
    }
  }
}

TEST_CASE("dual-cell mass balance holds after a mass update") {
  const StaggeredMesh mesh = build_mesh(2, {{0.0, 1.0}, {0.0, 1.0}}, {3, 3});
  std::mt19937 rng(21);
  const State s = random_state(mesh, rng);
  const auto fx = assemble_fluxes(mesh, s, InterpolantChoice{});
  const double dt = 0.01;
  std::vector<double> rho_next(mesh.n_cells());
  for (int k = 0; k < mesh.n_cells(); ++k) {
    double outflow = 0.0;
    for (int sidx = 0; sidx < mesh.cells[k].n_faces; ++sidx)
      outflow += fx.mass_from(mesh, mesh.cells[k].faces[sidx], k);
    rho_next[k] = s.rho[k] - dt / mesh.cells[k].volume * outflow;
  }
  const auto residual = dual_mass_relative_residual(mesh, fx.rho_dual,
                                                    dual_density(mesh, rho_next),
                                                    fx.dual_mass, dt);
  for (double r : residual) CHECK(r <= 1e-12);
}

TEST_CASE("dual-face scalar convection rules") {
  const StaggeredMesh mesh = build_mesh(1, {{0.0, 1.0}}, {2});
  REQUIRE(mesh.dual_faces.size() == 2);
  std::vector<double> z(mesh.n_faces());
  const DualFace& d = mesh.dual_faces[0];
  z[d.face_a] = 5.0;
  z[d.face_b] = -1.0;

  std::vector<double> flux(mesh.dual_faces.size(), 0.0);
  flux[0] = 2.0;
  CHECK(dual_face_scalar(mesh, z, flux, Interp::upwind)[0] == 5.0);
  flux[0] = -2.0;
  CHECK(dual_face_scalar(mesh, z, flux, Interp::upwind)[0] == -1.0);
  flux[0] = 0.0;  // tie goes to the face_a side
  CHECK(dual_face_scalar(mesh, z, flux, Interp::upwind)[0] == 5.0);
  CHECK(dual_face_scalar(mesh, z, flux, Interp::centered)[0] == doctest::Approx(2.0));
}

TEST_CASE("all interpolants produce convex combinations") {
  std::mt19937 rng(5);
  for (const StaggeredMesh& mesh :
       {build_mesh(1, {{0.0, 1.0}}, {9}), build_mesh(2, {{0.0, 1.0}, {0.0, 1.0}}, {4, 4})}) {
    for (Interp interp : {Interp::upwind, Interp::centered, Interp::muscl}) {
      for (int trial = 0; trial < 40; ++trial) {
        const State s = random_state(mesh, rng);
        const auto rho_face = interpolate_face_scalar(mesh, s.u, s.rho, interp);
        const auto e_face = interpolate_face_scalar(mesh, s.u, s.e, interp);
        for (int f = 0; f < mesh.n_faces(); ++f) {
          const Face& face = mesh.faces[f];
          if (face.boundary()) continue;
          const double rlo = std::min(s.rho[face.cell_in], s.rho[face.cell_out]);
          const double rhi = std::max(s.rho[face.cell_in], s.rho[face.cell_out]);
          CHECK(rho_face[f] >= rlo);
          CHECK(rho_face[f] <= rhi);
          const double elo = std::min(s.e[face.cell_in], s.e[face.cell_out]);
          const double ehi = std::max(s.e[face.cell_in], s.e[face.cell_out]);
          CHECK(e_face[f] >= elo);
          CHECK(e_face[f] <= ehi);
        }
        const auto mass = primal_mass_flux(mesh, s, interp);
        const auto dual = dual_mass_flux(mesh, mass);
        const auto u_dual = dual_face_velocity(mesh, s.u, dual, interp);
        for (std::size_t e = 0; e < mesh.dual_faces.size(); ++e) {
          const DualFace& d = mesh.dual_faces[e];
          for (int i = 0; i < mesh.dim; ++i) {
            const double lo = std::min(s.u[d.face_a][i], s.u[d.face_b][i]);
            const double hi = std::max(s.u[d.face_a][i], s.u[d.face_b][i]);
            CHECK(u_dual[e][i] >= lo);
            CHECK(u_dual[e][i] <= hi);
          }
        }
      }
    }
  }
}

TEST_CASE("global mass flux sum vanishes") {
  const StaggeredMesh mesh = build_mesh(2, {{0.0, 1.0}, {0.0, 1.0}}, {5, 5});
  std::mt19937 rng(3);
  const State s = random_state(mesh, rng);
  const auto fx = assemble_fluxes(mesh, s, InterpolantChoice{});
  double sum = 0.0;
  double scale = 1e-30;
  for (int k = 0; k < mesh.n_cells(); ++k)
    for (int sidx = 0; sidx < mesh.cells[k].n_faces; ++sidx) {
      const double f = fx.mass_from(mesh, mesh.cells[k].faces[sidx], k);
      sum += f;
      scale = std::max(scale, std::abs(f));
    }
  CHECK(std::abs(sum) <= 1e-13 * scale);
}
