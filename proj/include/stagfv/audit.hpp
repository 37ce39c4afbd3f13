#ifndef STAGFV_AUDIT_HPP
#define STAGFV_AUDIT_HPP

#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "stagfv/diagnostics.hpp"
#include "stagfv/scheme.hpp"

namespace stagfv {

// One audited step.  The total-energy residual needs three state levels and
// is therefore lagged by one step (nan on the first row).
struct AuditRow {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double res_dual_mass_max = 0.0;
  double res_dual_mass_mean = 0.0;
  double res_kinetic_max = 0.0;
  double res_kinetic_mean = 0.0;
  double res_energy_max = std::numeric_limits<double>::quiet_NaN();
  double res_energy_mean = std::numeric_limits<double>::quiet_NaN();
  double g_antisym_max = 0.0;
  double mass = 0.0;
  double shifted_energy = 0.0;
  double min_rho = 0.0;
  double min_e = 0.0;
  double min_remainder = 0.0;  // min over (sigma, i) of R
  double min_source = 0.0;     // min over K of S
};

struct AuditReport {
  std::vector<AuditRow> rows;
  double res_dual_mass_max = 0.0;
  double res_kinetic_max = 0.0;
  double res_energy_max = 0.0;
  double g_antisym_max = 0.0;
  double mass_drift_rel = 0.0;
  double energy_drift_rel = 0.0;
  double min_rho = std::numeric_limits<double>::infinity();
  double min_e = std::numeric_limits<double>::infinity();
  double min_remainder = std::numeric_limits<double>::infinity();
  bool positive = true;  // rho > 0 and e > 0 throughout

  void write_csv(std::ostream& os) const;
  std::string summary() const;
};

// Step observer that evaluates every discrete identity along a run.  Bind
// via std::ref to scheme::run, then call finish().
class Auditor {
 public:
  explicit Auditor(const StaggeredMesh& mesh) : mesh_(mesh) {}

  void operator()(const StepRecord& rec);
  AuditReport finish() const;

 private:
  const StaggeredMesh& mesh_;
  std::vector<AuditRow> rows_;
  double mass_ref_ = std::numeric_limits<double>::quiet_NaN();
  double energy_ref_ = std::numeric_limits<double>::quiet_NaN();
  // previous step, for the lagged total-energy balance
  bool have_prev_ = false;
  State prev_before_;
  FluxSet prev_fluxes_;
  double prev_dt_ = 0.0;
};

}  // namespace stagfv

#endif
