#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nldp/levy_measure.hpp"
#include "nldp/problem.hpp"
#include "nldp/stencil.hpp"

namespace nldp {

enum class NumericalFlux { EngquistOsher, LaxFriedrichs };

/// Far-field handling of jumps beyond Z: `HaloMean` relaxes towards the mean of
/// b over the exterior halo cells; `Drop` removes the tail term, which changes
/// the operator by at most 2 sup|b| tail (see `drop_tail_error_bound`).
enum class TailPolicy { HaloMean, Drop };

struct SchemeConfig {
  NumericalFlux flux = NumericalFlux::EngquistOsher;
  double dx = 1.0 / 128.0;
  double dt = 0.0;        ///< requested step; ignored under auto_cfl
  bool auto_cfl = true;
  double r = 0.0;         ///< splitting radius of the stencil; 0 means dx
  double Z = 1.0;         ///< truncation radius of the stencil
  double T = 0.0;         ///< horizon; 0 means the problem's T
  int cadence = 1;        ///< every cadence-th step is written by the CSV writer
  TailPolicy tail = TailPolicy::HaloMean;
  bool allow_cfl_violation = false;  ///< negative controls only
};

/// Mass balance of one step, all terms already multiplied by dt * dx^d:
/// interior mass change = -boundary_flux + exchange + tail, up to rounding.
struct StepBalance {
  double mass_change = 0.0;
  double boundary_flux = 0.0;  ///< outward numerical flux through interior/exterior faces
  double exchange = 0.0;       ///< nonlocal exchange between interior and exterior cells
  double tail = 0.0;           ///< contribution of the far-field tail
  double defect() const { return mass_change - (-boundary_flux + exchange + tail); }
};

/// Fields on the whole grid; halo cells hold the extension at the stored time.
struct Trajectory {
  Grid grid;
  std::vector<std::uint8_t> interior;
  std::vector<double> times;
  std::vector<Field> u;
  std::vector<StepBalance> balance;  ///< one entry per step
  double dt = 0.0;
  double dt_max = 0.0;
  double cfl_ratio = 0.0;
  DataRange range;          ///< u0 on the interior, extension on halo cells at every stored time
  double wall_seconds = 0.0;
  int cadence = 1;

  std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
};

/// b(u^n) - b(extension(t^n)) on every cell; zero on the halo by construction.
Field gamma_field(const Trajectory& traj, const ProblemSpec& spec, std::size_t n);

/// Largest monotone step 1 / (2 d L_f / dx + L_b (W + tail)); +inf when unconstrained.
double cfl_max_dt(int dim, double dx, double lip_f, double lip_b, const StencilWeights& s);
double cfl_max_dt(const Discretization& disc, const StencilWeights& s);

/// Stencil for a configuration: r defaults to dx; the drop policy removes the tail.
StencilWeights build_scheme_stencil(const LevyMeasure& mu, const SchemeConfig& cfg);

/// 2 sup|b| over the data range times the tail mass the drop policy discards.
double drop_tail_error_bound(const LevyMeasure& mu, const SchemeConfig& cfg, const DiffusionFn& b, const DataRange& range);

/// Explicit monotone finite-volume scheme bound to one problem, stencil and grid.
class Scheme {
 public:
  Scheme(const ProblemSpec& spec, const StencilWeights& stencil, const SchemeConfig& cfg);

  const ProblemSpec& spec() const { return spec_; }
  const StencilWeights& stencil() const { return stencil_; }
  const Discretization& disc() const { return disc_; }
  double horizon() const { return T_; }
  double dt_max() const { return dt_max_; }
  /// Uniform step T / ceil(T / dt_request) used by `solve`.
  double dt() const { return dt_; }
  int steps() const { return steps_; }

  /// Initial field: u0 inside, extension at t = 0 on the halo.
  Field initial() const { return disc_.u0; }

  /// One forward-Euler step from time t. The halo of `u` must hold the
  /// extension at time t; the returned halo holds it at t + dt.
  Field step(const Field& u, double t, double dt, StepBalance* balance = nullptr) const;

  /// Same update with the nonlocal term replaced by a frozen interior source.
  Field step_with_source(const Field& u, double t, double dt, const Field& source) const;

  /// Nonlocal term L_h[b(u)] on interior cells (zero elsewhere).
  Field nonlocal_term(const Field& u) const;

  Trajectory solve() const;

 private:
  Field advance(const Field& u, double t, double dt, const Field* source, StepBalance* balance) const;
  Trajectory make_trajectory() const;

  ProblemSpec spec_;
  StencilWeights stencil_;
  SchemeConfig cfg_;
  Discretization disc_;
  StencilKernel kernel_;
  double T_ = 0.0;
  double dt_max_ = 0.0;
  double dt_ = 0.0;
  int steps_ = 0;
};

Field step(const Field& u, const ProblemSpec& spec, const StencilWeights& stencil, const SchemeConfig& cfg, double t);
Trajectory solve(const ProblemSpec& spec, const StencilWeights& stencil, const SchemeConfig& cfg);

/// sum over steps and interior cells of |u - v| dt dx^d (left-endpoint rule in time).
double l1_distance_q(const Trajectory& a, const Trajectory& b);
/// (sum over steps and interior cells of |b(u) - b(v)|^2 dt dx^d)^{1/2}.
double l2_b_distance_q(const Trajectory& a, const Trajectory& b, const DiffusionFn& diffusion);
/// sup over stored times of sum over interior cells of |u - v| dx^d.
double sup_l1_distance(const Trajectory& a, const Trajectory& b);

struct PicardResult {
  Trajectory trajectory;
  std::vector<double> gaps;  ///< gaps[k] = sup_t ||u_{k+1} - u_k||_{L^1}, u_0 = 0 inside
  int iterations = 0;
  bool converged = false;
  double stencil_mass = 0.0;  ///< W + tail, the discrete total mass
};

/// Fixed-point iteration: u_{k+1} solves the conservation law with source L_h[b(u_k)].
PicardResult picard_solve(const ProblemSpec& spec, const LevyMeasure& mu_finite, const SchemeConfig& cfg, int k_max,
                          double tol);

struct ChainRun {
  std::string label;
  StencilWeights stencil;
  Trajectory traj;
  double l1_distance = 0.0;       ///< to the reference run, in L^1(Q)
  double l2_b_distance = 0.0;     ///< of b(u), to the reference run, in L^2(Q)
  double measure_distance = 0.0;  ///< weighted total variation to the reference measure (stability runs)
};

struct ChainResult {
  std::vector<ChainRun> runs;
  ChainRun reference;
  double dt = 0.0;  ///< common step of every run in the chain
};

/// Runs with mu_n = (1/n) fractional(alpha) against the b = 0 conservation-law run.
ChainResult vanishing_viscosity_run(const ProblemSpec& spec, double alpha, const std::vector<int>& n_list,
                                    const SchemeConfig& cfg);

/// Runs every measure of `mus` and the limit measure on the same grid and step.
ChainResult stability_run(const ProblemSpec& spec, const std::vector<LevyMeasure>& mus, const LevyMeasure& mu_limit,
                          const SchemeConfig& cfg, const std::vector<std::string>& labels = {});

}  // namespace nldp
