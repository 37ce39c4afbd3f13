// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances are fixed here, not configurable.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stagfv/audit.hpp"
#include "stagfv/commands.hpp"
#include "stagfv/diagnostics.hpp"
#include "stagfv/riemann.hpp"
#include "stagfv/weakform.hpp"

using namespace stagfv;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::ostream&)> check;
};

const GasConfig kGas{1.4};

struct SodAudit {
  AuditReport report;
  Trajectory trajectory;
};

SodAudit run_sod_audit(int cells, double cfl, double t_end) {
  const StaggeredMesh mesh = build_mesh(1, {{0.0, 1.0}}, {cells});
  const State initial = initialize(mesh, sod_initial(kGas.gamma), kGas);
  StepConfig config;
  config.cfl = cfl;
  config.t_end = t_end;
  Auditor auditor(mesh);
  SodAudit out;
  out.trajectory = run(mesh, initial, kGas, config, {}, std::ref(auditor));
  out.report = auditor.finish();
  return out;
}

// Criteria 1 and 2 share the same audited Sod run.
const SodAudit& sod_audit_200() {
  static const SodAudit audit = run_sod_audit(200, 0.4, 0.2);
  return audit;
}

bool criterion_energy(std::ostream& os) {
  const SodAudit& audit = sod_audit_200();
  os << "energy residual max " << audit.report.res_energy_max << " (tol 1e-11), drift "
     << audit.report.energy_drift_rel << " (tol 1e-12)";
  return !audit.trajectory.failure && audit.report.res_energy_max <= 1e-11 &&
         audit.report.energy_drift_rel <= 1e-12;
}

bool criterion_kinetic(std::ostream& os) {
  const SodAudit& audit = sod_audit_200();
  os << "kinetic residual max " << audit.report.res_kinetic_max << " (tol 1e-12)";
  return audit.report.res_kinetic_max <= 1e-12;
}

bool criterion_dual_mass(std::ostream& os) {
  const SodAudit& sod = sod_audit_200();

  const StaggeredMesh mesh = build_mesh(2, {{0.0, 1.0}, {0.0, 1.0}}, {32, 32});
  const State initial = initialize(mesh, smooth2d_initial(kGas.gamma), kGas);
  StepConfig config;
  config.cfl = 0.4;
  config.t_end = 1e9;
  config.max_steps = 50;
  Auditor auditor(mesh);
  const Trajectory traj = run(mesh, initial, kGas, config, {}, std::ref(auditor));
  const AuditReport report = auditor.finish();
  os << "dual-mass residual max 1D " << sod.report.res_dual_mass_max << ", 2D "
     << report.res_dual_mass_max << " over " << traj.steps << " steps (tol 1e-12)";
  return sod.report.res_dual_mass_max <= 1e-12 && report.res_dual_mass_max <= 1e-12 &&
         traj.steps == 50 && !traj.failure;
}

bool criterion_reconstruction(std::ostream& os) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> pos(0.5, 2.0);
  std::uniform_real_distribution<double> sym(-2.0, 2.0);
  double worst = 0.0;
  for (const StaggeredMesh& mesh :
       {build_mesh(1, {{0.0, 1.0}}, {8}), build_mesh(2, {{0.0, 1.0}, {0.0, 1.0}}, {4, 4})}) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> rho0(mesh.n_cells()), rho1(mesh.n_cells());
      for (double& v : rho0) v = pos(rng);
      for (double& v : rho1) v = pos(rng);
      std::vector<double> z0(mesh.n_faces()), z1(mesh.n_faces()), mass(mesh.n_faces(), 0.0);
      for (double& v : z0) v = sym(rng);
      for (double& v : z1) v = sym(rng);
      for (int f = 0; f < mesh.n_faces(); ++f)
        if (!mesh.faces[f].boundary()) mass[f] = sym(rng);
      const auto dual = dual_mass_flux(mesh, mass);
      const auto z_dual = dual_face_scalar(mesh, z0, dual, Interp::upwind);
      const auto eq = primal_convection_residual(mesh, dual_density(mesh, rho0), z0,
                                                 dual_density(mesh, rho1), z1, dual, z_dual, 0.02);
      worst = std::max(worst, eq.max_rel_diff);
    }
  }
  os << "max relative difference " << worst << " (tol 1e-12)";
  return worst <= 1e-12;
}

bool criterion_flux_conservativity(std::ostream& os) {
  const SodAudit& audit = sod_audit_200();
  os << "max |G_K + G_L| " << audit.report.g_antisym_max << " (exact zero required)";
  return audit.report.g_antisym_max == 0.0;
}

bool criterion_positivity(std::ostream& os) {
  const SodAudit audit = run_sod_audit(200, 0.5, 0.2);
  os << "min rho " << audit.report.min_rho << ", min e " << audit.report.min_e << ", min R "
     << audit.report.min_remainder << " (tol -1e-14)";
  return !audit.trajectory.failure && audit.report.min_rho > 0.0 && audit.report.min_e > 0.0 &&
         audit.report.min_remainder >= -1e-14;
}

bool criterion_shock_convergence(std::ostream& os) {
  RiemannProblem problem{{1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, kGas.gamma, 0.5};
  const StarState star = solve_star_state(problem);
  const double t_end = 0.2;
  const double shock_exact = problem.x0 + star.right_head * t_end;

  std::vector<double> errors;
  double shock_err_rel = 1.0;
  for (int cells : {100, 200, 400, 800}) {
    const StaggeredMesh mesh = build_mesh(1, {{0.0, 1.0}}, {cells});
    const State initial = initialize(mesh, sod_initial(kGas.gamma), kGas);
    StepConfig config;
    config.cfl = 0.4;
    config.t_end = t_end;
    const Trajectory traj = run(mesh, initial, kGas, config);
    if (traj.failure) {
      os << "solver failure at " << cells << " cells";
      return false;
    }
    double err = 0.0;
    for (int k = 0; k < mesh.n_cells(); ++k) {
      const double x = mesh.cells[k].centroid.x;
      err += mesh.cells[k].volume *
             std::abs(traj.final_state.rho[k] - sample(problem, star, (x - 0.5) / t_end).rho);
    }
    errors.push_back(err);
    if (cells == 800) {
      const double level = 0.5 * (star.rho_right + problem.right.rho);
      double pos = mesh.cells[cells - 1].centroid.x;
      for (int k = cells - 1; k > 0; --k) {
        if (traj.final_state.rho[k] < level && traj.final_state.rho[k - 1] >= level) {
          const double x0 = mesh.cells[k - 1].centroid.x;
          const double x1 = mesh.cells[k].centroid.x;
          const double w =
              (level - traj.final_state.rho[k - 1]) / (traj.final_state.rho[k] - traj.final_state.rho[k - 1]);
          pos = x0 + w * (x1 - x0);
          break;
        }
      }
      shock_err_rel = std::abs(pos - shock_exact) / shock_exact;
    }
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < errors.size(); ++i) decreasing = decreasing && errors[i] < errors[i - 1];
  os << "L1(rho) errors";
  for (double e : errors) os << ' ' << e;
  os << ", shock position error " << shock_err_rel << " (tol 0.01)";
  return decreasing && shock_err_rel <= 0.01;
}

struct SmoothStudy {
  std::vector<double> res_dt, res_div, trans_primal, trans_dual;
};

const SmoothStudy& smooth_study() {
  static const SmoothStudy study = [] {
    SmoothStudy out;
    const ManufacturedFields fields = manufactured_smooth_1d();
    const double T = 0.5;
    for (int cells : {32, 64, 128, 256}) {
      const StaggeredMesh mesh = build_mesh(1, {{0.0, 1.0}}, {cells});
      const double h = 1.0 / cells;
      const SampledTrajectory traj = sample_trajectory(mesh, fields, T, 0.4 * h);
      const TestFunction phi = bump_test_function(mesh, T);
      const WeakFormProbe probe = weak_form_terms(mesh, traj, fields, phi);
      const auto translates = trajectory_translate_differences(mesh, traj);
      out.res_dt.push_back(probe.res_dt);
      out.res_div.push_back(probe.res_div);
      out.trans_primal.push_back(translates.first);
      out.trans_dual.push_back(translates.second);
    }
    return out;
  }();
  return study;
}

bool criterion_weak_consistency(std::ostream& os) {
  const SmoothStudy& study = smooth_study();
  auto order = [](const std::vector<double>& v) {
    double sum = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) sum += std::log2(v[i - 1] / v[i]);
    return sum / (v.size() - 1);
  };
  bool monotone = true;
  for (std::size_t i = 1; i < study.res_dt.size(); ++i)
    monotone = monotone && study.res_dt[i] < study.res_dt[i - 1] &&
               study.res_div[i] < study.res_div[i - 1];
  const double order_dt = order(study.res_dt);
  const double order_div = order(study.res_div);
  os << "residuals T_dt";
  for (double v : study.res_dt) os << ' ' << v;
  os << " (order " << order_dt << "), T_div";
  for (double v : study.res_div) os << ' ' << v;
  os << " (order " << order_div << "), tol order >= 0.8";
  return monotone && order_dt >= 0.8 && order_div >= 0.8;
}

bool criterion_translate_decay(std::ostream& os) {
  const SmoothStudy& study = smooth_study();
  bool monotone = true;
  for (std::size_t i = 1; i < study.trans_primal.size(); ++i)
    monotone = monotone && study.trans_primal[i] < study.trans_primal[i - 1] &&
               study.trans_dual[i] < study.trans_dual[i - 1];
  os << "primal sums";
  for (double v : study.trans_primal) os << ' ' << v;
  os << ", dual sums";
  for (double v : study.trans_dual) os << ' ' << v;
  return monotone;
}

bool criterion_xi(std::ostream& os) {
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  double worst = 0.0;
  for (int zeta : {2, 4}) {
    const XiTable& xi = solve_xi_coefficients(zeta);
    std::vector<std::array<int, 2>> duals;
    if (zeta == 2)
      duals = {{0, 1}};
    else
      duals = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> flux(zeta);
      double scale = 1e-30;
      for (double& f : flux) {
        f = dist(rng);
        scale = std::max(scale, std::abs(f));
      }
      for (int s = 0; s < zeta; ++s) {
        double lhs = -flux[s];
        for (int j = 0; j < zeta; ++j) lhs += flux[j] / zeta;
        for (std::size_t r = 0; r < duals.size(); ++r) {
          double sign = 0.0;
          if (duals[r][0] == s) sign = 1.0;
          if (duals[r][1] == s) sign = -1.0;
          if (sign == 0.0) continue;
          for (int j = 0; j < zeta; ++j) lhs -= sign * xi.rows[r][j] * flux[j];
        }
        worst = std::max(worst, std::abs(lhs) / scale);
      }
    }
  }
  os << "max relative balance residual " << worst << " (tol 1e-13)";
  return worst <= 1e-13;
}

bool criterion_reproducibility(std::ostream& os) {
  const auto dir = std::filesystem::temp_directory_path() / "stagfv_acceptance_repro";
  std::filesystem::remove_all(dir);
  RunConfig config = parse_config_text(
      "preset = sod\nnx = 100\nt_end = 0.1\naudit = true\noutput_times = 0.05,0.1\n");
  auto read = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os2;
    os2 << in.rdbuf();
    return os2.str();
  };
  std::ostringstream sink;
  config.output_dir = (dir / "a").string();
  if (cmd_run(config, sink) != 0) return false;
  config.output_dir = (dir / "b").string();
  if (cmd_run(config, sink) != 0) return false;
  bool ok = true;
  for (const char* name : {"fields_t0.05.csv", "fields_t0.1.csv", "audit.csv"}) {
    const std::string a = read(dir / "a" / name);
    const std::string b = read(dir / "b" / name);
    ok = ok && !a.empty() && a == b;
  }
  os << "two runs compared byte for byte over 3 files";
  std::filesystem::remove_all(dir);
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1 conservativity: total-energy balance and shifted-energy drift", criterion_energy},
      {"2 kinetic-energy identity", criterion_kinetic},
      {"3 dual-cell mass balance (1D and 2D)", criterion_dual_mass},
      {"4 reconstruction equivalence of the convection operator", criterion_reconstruction},
      {"5 flux conservativity G_K + G_L = 0", criterion_flux_conservativity},
      {"6 positivity and nonnegative remainder under CFL 0.5", criterion_positivity},
      {"7 shock-capturing convergence to the exact solution", criterion_shock_convergence},
      {"8 weak consistency of T_dt and T_div", criterion_weak_consistency},
      {"9 translate-difference decay", criterion_translate_decay},
      {"10 dual-flux coefficient admissibility", criterion_xi},
      {"11 bit-identical reruns", criterion_reproducibility},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.name << " -- " << detail.str()
              << "\n";
  }
  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures;
}
