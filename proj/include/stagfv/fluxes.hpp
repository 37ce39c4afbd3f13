#ifndef STAGFV_FLUXES_HPP
#define STAGFV_FLUXES_HPP

#include <vector>

#include "stagfv/mesh.hpp"
#include "stagfv/state.hpp"

namespace stagfv {

// Face-value interpolants.  All of them produce convex combinations of the
// two neighbouring values: upwinding follows the material velocity only,
// centered is the arithmetic mean (no positivity guarantee) and muscl is a
// minmod-limited reconstruction clamped into the neighbour hull.
enum class Interp { upwind, centered, muscl };

Interp parse_interp(const std::string& name);
const char* interp_name(Interp interp);

struct InterpolantChoice {
  Interp rho = Interp::upwind;
  Interp e = Interp::upwind;
  Interp velocity = Interp::upwind;
};

// All per-step flux quantities of one time level.  Primal fluxes are stored
// once per face, oriented out of the owner cell (antisymmetry is structural);
// dual fluxes once per dual face, oriented from D_{face_a} to D_{face_b}.
struct FluxSet {
  std::vector<double> mass;        // F_{K,sigma} from the owner side
  std::vector<double> rho_face;    // rho_sigma
  std::vector<double> e_face;      // e_sigma
  std::vector<double> rho_dual;    // rho_{D_sigma} at the same time level
  std::vector<double> dual_mass;   // F_{sigma,eps} in stored orientation
  std::vector<Vec2> u_dual_face;   // convected u_{eps,i}

  // Signed flux F_{c,f} as seen from cell c.
  double mass_from(const StaggeredMesh& mesh, int f, int c) const {
    return c == mesh.faces[f].cell_in ? mass[f] : -mass[f];
  }
};

// Signed dual flux F_{sigma,eps} as seen from the dual cell of face sigma.
inline double dual_flux_from(const StaggeredMesh& mesh, const std::vector<double>& dual_mass,
                             int dual_face, int sigma) {
  return mesh.dual_faces[dual_face].face_a == sigma ? dual_mass[dual_face]
                                                    : -dual_mass[dual_face];
}

// Face interpolation of a cell scalar, upwinded w.r.t. u_sigma.n (ties take
// the owner-cell value).  Boundary faces carry the adjacent cell value.
std::vector<double> interpolate_face_scalar(const StaggeredMesh& mesh,
                                            const std::vector<Vec2>& u,
                                            const std::vector<double>& q, Interp interp);

// F_{K,sigma} = |sigma| rho_sigma u_sigma.n_{K,sigma}; zero on the boundary.
std::vector<double> primal_mass_flux(const StaggeredMesh& mesh, const State& state,
                                     Interp rho_interp);

// (div u)_K = (1/|K|) sum |sigma| u_sigma.n_{K,sigma}.
std::vector<double> face_divergence(const StaggeredMesh& mesh, const std::vector<Vec2>& u);

// (grad p)_sigma = (|sigma|/|D_sigma|)(p_L - p_K) n_{K,sigma}, zero on the
// boundary; |D_sigma| (grad p)_sigma is the form dual to the divergence.
std::vector<Vec2> pressure_gradient(const StaggeredMesh& mesh, const std::vector<double>& p);

// rho_{D_sigma} = (|D_{K,sigma}| rho_K + |D_{L,sigma}| rho_L) / |D_sigma|,
// rho_K on boundary faces.
std::vector<double> dual_density(const StaggeredMesh& mesh, const std::vector<double>& rho);

// F_{sigma,eps} = sum_{sigma'} xi_{eps,sigma'} F_{K,sigma'} for eps in K.
std::vector<double> dual_mass_flux(const StaggeredMesh& mesh,
                                   const std::vector<double>& primal_mass);

// Convected value at dual faces for a face scalar z (upwind w.r.t. the dual
// flux, ties take the face_a side).
std::vector<double> dual_face_scalar(const StaggeredMesh& mesh, const std::vector<double>& z,
                                     const std::vector<double>& dual_mass, Interp interp);

std::vector<Vec2> dual_face_velocity(const StaggeredMesh& mesh, const std::vector<Vec2>& u,
                                     const std::vector<double>& dual_mass, Interp interp);

FluxSet assemble_fluxes(const StaggeredMesh& mesh, const State& state,
                        const InterpolantChoice& choice);

}  // namespace stagfv

#endif
