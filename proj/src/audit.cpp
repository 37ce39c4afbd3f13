#include "stagfv/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stagfv {

namespace {

struct MaxMean {
  double max = 0.0;
  double sum = 0.0;
  long count = 0;
  void add(double v) {
    max = std::max(max, v);
    sum += v;
    ++count;
  }
  double mean() const { return count > 0 ? sum / count : 0.0; }
};

void print_field(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

void Auditor::operator()(const StepRecord& rec) {
  AuditRow row;
  row.step = rec.n;
  row.t = rec.after.t;
  row.dt = rec.dt;

  const std::vector<double> rho_dual_after = dual_density(mesh_, rec.after.rho);
  MaxMean dual_mass;
  for (double r : dual_mass_relative_residual(mesh_, rec.fluxes.rho_dual, rho_dual_after,
                                              rec.fluxes.dual_mass, rec.dt))
    dual_mass.add(r);
  row.res_dual_mass_max = dual_mass.max;
  row.res_dual_mass_mean = dual_mass.mean();

  MaxMean kinetic;
  for (const Vec2& r : kinetic_identity_relative_residual(mesh_, rec.before, rec.after,
                                                          rec.fluxes, rec.source_after, rec.dt))
    for (int i = 0; i < mesh_.dim; ++i) kinetic.add(r[i]);
  row.res_kinetic_max = kinetic.max;
  row.res_kinetic_mean = kinetic.mean();

  // conservativity of the reconstructed kinetic flux: both orientations are
  // formed from the identical half sums, so the sum must vanish exactly
  std::vector<double> ekin_dual(mesh_.dual_faces.size());
  for (std::size_t e = 0; e < ekin_dual.size(); ++e)
    ekin_dual[e] = 0.5 * rec.fluxes.u_dual_face[e].dot(rec.fluxes.u_dual_face[e]);
  const FaceFluxReconstruction g = reconstruct_face_flux(mesh_, rec.fluxes.dual_mass, ekin_dual);
  for (int f = 0; f < mesh_.n_faces(); ++f) {
    const Face& face = mesh_.faces[f];
    if (face.boundary()) continue;
    const double sum = g.from(mesh_, f, face.cell_in) + g.from(mesh_, f, face.cell_out);
    row.g_antisym_max = std::max(row.g_antisym_max, std::abs(sum));
  }

  if (have_prev_) {
    MaxMean energy;
    for (double r : total_energy_relative_residual(mesh_, prev_before_, rec.before, rec.after,
                                                   prev_fluxes_, rec.fluxes, prev_dt_, rec.dt))
      energy.add(r);
    row.res_energy_max = energy.max;
    row.res_energy_mean = energy.mean();
  }

  row.mass = total_mass(mesh_, rec.after.rho);
  row.shifted_energy = shifted_total_energy(mesh_, rec.after, rec.fluxes.rho_dual, rec.before.u);
  row.min_rho = *std::min_element(rec.after.rho.begin(), rec.after.rho.end());
  row.min_e = *std::min_element(rec.after.e.begin(), rec.after.e.end());
  row.min_remainder = std::numeric_limits<double>::infinity();
  for (const Vec2& r : rec.source_after.R)
    for (int i = 0; i < mesh_.dim; ++i) row.min_remainder = std::min(row.min_remainder, r[i]);
  row.min_source = *std::min_element(rec.source_after.S.begin(), rec.source_after.S.end());

  if (rows_.empty()) mass_ref_ = total_mass(mesh_, rec.before.rho);
  if (rows_.empty()) energy_ref_ = row.shifted_energy;
  rows_.push_back(row);

  have_prev_ = true;
  prev_before_ = rec.before;
  prev_fluxes_ = rec.fluxes;
  prev_dt_ = rec.dt;
}

AuditReport Auditor::finish() const {
  AuditReport rep;
  rep.rows = rows_;
  for (const AuditRow& row : rows_) {
    rep.res_dual_mass_max = std::max(rep.res_dual_mass_max, row.res_dual_mass_max);
    rep.res_kinetic_max = std::max(rep.res_kinetic_max, row.res_kinetic_max);
    if (std::isfinite(row.res_energy_max))
      rep.res_energy_max = std::max(rep.res_energy_max, row.res_energy_max);
    rep.g_antisym_max = std::max(rep.g_antisym_max, row.g_antisym_max);
    rep.mass_drift_rel = std::max(rep.mass_drift_rel,
                                  std::abs(row.mass - mass_ref_) / std::abs(mass_ref_));
    rep.energy_drift_rel = std::max(rep.energy_drift_rel,
                                    std::abs(row.shifted_energy - energy_ref_) / std::abs(energy_ref_));
    rep.min_rho = std::min(rep.min_rho, row.min_rho);
    rep.min_e = std::min(rep.min_e, row.min_e);
    rep.min_remainder = std::min(rep.min_remainder, row.min_remainder);
  }
  rep.positive = rep.min_rho > 0.0 && rep.min_e > 0.0;
  return rep;
}

void AuditReport::write_csv(std::ostream& os) const {
  os << "step,t,dt,res_dual_mass_max,res_dual_mass_mean,res_kinetic_max,res_kinetic_mean,"
        "res_energy_max,res_energy_mean,g_antisym_max,mass,shifted_energy,min_rho,min_e,"
        "min_R,min_S\n";
  for (const AuditRow& r : rows) {
    os << r.step << ',';
    const double fields[] = {r.t, r.dt, r.res_dual_mass_max, r.res_dual_mass_mean,
                             r.res_kinetic_max, r.res_kinetic_mean, r.res_energy_max,
                             r.res_energy_mean, r.g_antisym_max, r.mass, r.shifted_energy,
                             r.min_rho, r.min_e, r.min_remainder, r.min_source};
    for (std::size_t i = 0; i < std::size(fields); ++i) {
      if (i) os << ',';
      print_field(os, fields[i]);
    }
    os << '\n';
  }
}

std::string AuditReport::summary() const {
  std::ostringstream os;
  os << "audit over " << rows.size() << " steps\n"
     << "  dual mass balance   max rel residual " << res_dual_mass_max << "\n"
     << "  kinetic identity    max rel residual " << res_kinetic_max << "\n"
     << "  total energy        max rel residual " << res_energy_max << "\n"
     << "  flux conservativity max |G_K + G_L|  " << g_antisym_max << "\n"
     << "  mass drift          " << mass_drift_rel << " relative\n"
     << "  shifted energy drift " << energy_drift_rel << " relative\n"
     << "  min rho " << min_rho << ", min e " << min_e << ", min R " << min_remainder
     << (positive ? "  (positive)" : "  (POSITIVITY LOST)") << "\n";
  return os.str();
}

}  // namespace stagfv
