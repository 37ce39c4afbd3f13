#ifndef STAGFV_DIAGNOSTICS_HPP
#define STAGFV_DIAGNOSTICS_HPP

#include <utility>
#include <vector>

#include "stagfv/fluxes.hpp"
#include "stagfv/mesh.hpp"
#include "stagfv/scheme.hpp"

namespace stagfv {

// Residuals are reported relative to the largest additive term of the
// identity, with an absolute floor so all-zero rows stay well defined.
constexpr double kResidualFloor = 1e-14;

inline double relative_residual(double sum, double max_term) {
  return std::abs(sum) / std::max(max_term, kResidualFloor);
}

// |K| (rho z)_K = sum_sigma (|D_sigma|/2) rho_{D_sigma} z_sigma.
std::vector<double> reconstruct_cell_product(const StaggeredMesh& mesh,
                                             const std::vector<double>& rho_dual,
                                             const std::vector<double>& z_face);

// Primal-face convection fluxes reconstructed from the dual fluxes:
// G_{K,sigma} = -1/2 sum_{eps in K} F_{sigma,eps} z_eps
//             + 1/2 sum_{eps not in K} F_{sigma,eps} z_eps.
// The two half sums are kept so G can be formed from either side with the
// identical summands (the conservativity check is then exact in floating
// point).
struct FaceFluxReconstruction {
  std::vector<double> half_in;   // sum over eps in K of F_{sigma,eps} z_eps
  std::vector<double> half_out;  // sum over eps in L

  double from(const StaggeredMesh& mesh, int f, int cell) const {
    return cell == mesh.faces[f].cell_in ? 0.5 * half_out[f] - 0.5 * half_in[f]
                                         : 0.5 * half_in[f] - 0.5 * half_out[f];
  }
};

FaceFluxReconstruction reconstruct_face_flux(const StaggeredMesh& mesh,
                                             const std::vector<double>& dual_mass,
                                             const std::vector<double>& z_dual);

// Dual-mesh convection operator applied to a face scalar z over one step.
std::vector<double> dual_convection(const StaggeredMesh& mesh,
                                    const std::vector<double>& rho_dual0,
                                    const std::vector<double>& z0,
                                    const std::vector<double>& rho_dual1,
                                    const std::vector<double>& z1,
                                    const std::vector<double>& dual_mass,
                                    const std::vector<double>& z_dual, double dt);

// The same primal convection operator computed two ways: as the half-sum of
// the dual operators over the faces of each cell, and in flux form from the
// reconstruction above.  Both must agree to round-off.
struct ConvectionEquivalence {
  std::vector<double> face_form;
  std::vector<double> flux_form;
  std::vector<double> rel_diff;
  double max_rel_diff = 0.0;
};

ConvectionEquivalence primal_convection_residual(
    const StaggeredMesh& mesh, const std::vector<double>& rho_dual0,
    const std::vector<double>& z0, const std::vector<double>& rho_dual1,
    const std::vector<double>& z1, const std::vector<double>& dual_mass,
    const std::vector<double>& z_dual, double dt);

// Relative residual of the dual-cell mass balance for one step.
std::vector<double> dual_mass_relative_residual(const StaggeredMesh& mesh,
                                                const std::vector<double>& rho_dual0,
                                                const std::vector<double>& rho_dual1,
                                                const std::vector<double>& dual_mass, double dt);

// Relative residual of the discrete kinetic-energy balance (one step), per
// face and component.  Components beyond mesh.dim are zero.
std::vector<Vec2> kinetic_identity_relative_residual(const StaggeredMesh& mesh,
                                                     const State& before, const State& after,
                                                     const FluxSet& fluxes,
                                                     const CorrectiveSource& source_after,
                                                     double dt);

// Per-cell kinetic energy reconstruction: (rho Ekin)_K, using the dual
// densities and face velocities of one level.
std::vector<double> kinetic_cell_energy(const StaggeredMesh& mesh,
                                        const std::vector<double>& rho_dual,
                                        const std::vector<Vec2>& u);

// Relative residual of the local total-energy balance in flux form, for the
// step pair (n -> n+1 -> n+2).  s1/fx1 sit at level n+1; dt0 and dt1 are the
// two step sizes (the balance is the printed one when they coincide).
std::vector<double> total_energy_relative_residual(const StaggeredMesh& mesh, const State& s0,
                                                   const State& s1, const State& s2,
                                                   const FluxSet& fx0, const FluxSet& fx1,
                                                   double dt0, double dt1);

double total_mass(const StaggeredMesh& mesh, const std::vector<double>& rho);

// Shifted total energy sum_K |K| (rho^{n+1} e^{n+1} + (rho Ekin)^n)_K; the
// arguments after `next` belong to level n.
double shifted_total_energy(const StaggeredMesh& mesh, const State& next,
                            const std::vector<double>& rho_dual, const std::vector<Vec2>& u);

// Space-time translate-difference sums: the primal form over interior faces
// and the dual form over unordered face pairs of each cell.  cell_fields and
// face_fields hold one entry per time level n = 0..N-1, dts the step sizes.
std::pair<double, double> translate_differences(
    const StaggeredMesh& mesh, const std::vector<std::vector<double>>& cell_fields,
    const std::vector<std::vector<double>>& face_fields, const std::vector<double>& dts);

}  // namespace stagfv

#endif
