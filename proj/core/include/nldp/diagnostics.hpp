#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nldp/levy_measure.hpp"
#include "nldp/problem.hpp"
#include "nldp/scheme.hpp"
#include "nldp/stencil.hpp"

namespace nldp {

/// One named inequality check. Slack is RHS - LHS (or distance to the violated
/// bound) and is never clamped.
struct Check {
  std::string name;
  bool pass = false;
  double worst_slack = 0.0;
  std::vector<std::pair<std::string, double>> params;
};

struct MaxPrincipleVerdict {
  double lo = 0.0;  ///< recorded data range
  double hi = 0.0;
  double worst_slack = 0.0;  ///< min over stored interior values of min(u - lo, hi - u)
  std::size_t violations = 0;
  bool pass = false;
};

/// Interior values of every stored step against the trajectory's data range;
/// values farther than `tol` outside the range count as violations.
MaxPrincipleVerdict max_principle_check(const Trajectory& traj, double tol = 1e-12);

struct ContractionSeries {
  std::vector<double> l1;     ///< sum over interior cells of |u^n - v^n| dx^d
  double worst_increase = 0.0;  ///< max over n of l1[n+1] - l1[n]
  bool pass = false;
};

/// Requires identical grids, steps and halo values (ConfigMismatch otherwise).
ContractionSeries l1_contraction_check(const Trajectory& u, const Trajectory& v, double tol = 1e-12);

struct EnergyReport {
  double lhs = 0.0;            ///< dt sum_n B[gamma^n, gamma^n]
  double initial_term = 0.0;   ///< dx^d sum H(u0, extension(0))
  double extension_term = 0.0; ///< -dt dx^d sum [(u - e) e_t + F(u, e) . grad e] b'(e)
  double operator_term = 0.0;  ///< dt dx^d sum L_h[b(e)] gamma
  double rhs = 0.0;
  double slack = 0.0;
};

/// Discrete energy inequality along a trajectory. Needs the closed-form time
/// derivative and gradient of the extension (MissingExtensionDerivatives).
EnergyReport energy_report(const Trajectory& traj, const ProblemSpec& spec, const StencilWeights& stencil);

struct EnergySweep {
  std::vector<double> dx;     ///< from coarse to fine
  std::vector<double> slack;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> eps_grid;  ///< eps_grid[i] = 2 |slack[i] - slack[i+1]|, one fewer than dx
};

/// Solves on each dx (with the measure rebuilt per grid) and reports the energy slack.
EnergySweep energy_refinement(const ProblemSpec& spec, const LevyMeasure& mu, const SchemeConfig& cfg,
                              const std::vector<double>& dx_list);

/// Space-time samples gamma^n = b(u^n) - b(extension(t^n)) for n = 0..N-1,
/// zero outside the stored steps and outside the grid.
struct SpaceTimeField {
  Grid grid;
  double dt = 0.0;
  std::vector<Field> slices;
};

SpaceTimeField gamma_series(const Trajectory& traj, const ProblemSpec& spec);

struct ModuliTable {
  std::vector<int> shifts_cells;  ///< h in cells
  std::vector<double> space;      ///< omega_space(h dx), max over coordinate directions
  std::vector<int> shifts_steps;  ///< tau in steps
  std::vector<double> time;       ///< omega_time(tau dt)
};

/// Discrete L^2 translation moduli of a space-time field.
ModuliTable translation_moduli(const SpaceTimeField& g, const std::vector<int>& h_cells,
                               const std::vector<int>& tau_steps);

struct UniformEnergySeries {
  std::vector<double> energy;  ///< E_n = dt sum_steps B_n[gamma_n, gamma_n]
  double max = 0.0;
  double median = 0.0;
};

struct EnergyRun {
  const StencilWeights* stencil = nullptr;
  const Trajectory* traj = nullptr;
};

UniformEnergySeries uniform_energy_series(const std::vector<EnergyRun>& runs, const ProblemSpec& spec);

/// Exact mass bookkeeping of a trajectory: largest |defect| over its steps.
double worst_balance_defect(const Trajectory& traj);

}  // namespace nldp
