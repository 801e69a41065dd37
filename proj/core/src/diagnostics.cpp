#include "nldp/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "nldp/error.hpp"

namespace nldp {

MaxPrincipleVerdict max_principle_check(const Trajectory& traj, double tol) {
  MaxPrincipleVerdict v;
  v.lo = traj.range.lo;
  v.hi = traj.range.hi;
  v.worst_slack = v.hi - v.lo;
  for (const Field& u : traj.u) {
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (!traj.interior[k]) continue;
      const double s = std::min(u[k] - v.lo, v.hi - u[k]);
      v.worst_slack = std::min(v.worst_slack, s);
      if (s < -tol) ++v.violations;
    }
  }
  v.pass = v.violations == 0;
  return v;
}

ContractionSeries l1_contraction_check(const Trajectory& u, const Trajectory& v, double tol) {
  require(u.grid == v.grid && u.interior == v.interior, Errc::ConfigMismatch, "trajectories live on different grids");
  require(u.times.size() == v.times.size() && u.dt == v.dt, Errc::ConfigMismatch, "trajectories use different steps");
  for (std::size_t n = 0; n < u.u.size(); ++n)
    for (std::size_t k = 0; k < u.grid.size(); ++k)
      if (!u.interior[k] && u.u[n][k] != v.u[n][k])
        fail(Errc::ConfigMismatch, "trajectories have different exterior data");
  ContractionSeries s;
  const double vol = u.grid.cell_volume();
  for (std::size_t n = 0; n < u.u.size(); ++n) {
    double sum = 0.0;
    for (std::size_t k = 0; k < u.grid.size(); ++k)
      if (u.interior[k]) sum += std::abs(u.u[n][k] - v.u[n][k]);
    s.l1.push_back(sum * vol);
  }
  s.worst_increase = -INFINITY;
  for (std::size_t n = 0; n + 1 < s.l1.size(); ++n) s.worst_increase = std::max(s.worst_increase, s.l1[n + 1] - s.l1[n]);
  if (s.l1.size() < 2) s.worst_increase = 0.0;
  s.pass = s.worst_increase <= tol;
  return s;
}

EnergyReport energy_report(const Trajectory& traj, const ProblemSpec& spec, const StencilWeights& stencil) {
  require(static_cast<bool>(spec.extension_dt) && static_cast<bool>(spec.extension_grad),
          Errc::MissingExtensionDerivatives, "energy report needs the extension's time derivative and gradient");
  const Grid& g = traj.grid;
  const double vol = g.cell_volume();
  const int d = g.dim;
  const auto& b = spec.diffusion;
  EnergyReport r;

  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!traj.interior[k]) continue;
    const double e0 = spec.extension(0.0, g.center(k));
    r.initial_term += b.entropy_h(traj.u[0][k], e0);
  }
  r.initial_term *= vol;

  std::vector<std::size_t> exterior;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (!traj.interior[k]) exterior.push_back(k);

  const std::size_t steps = traj.steps();
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = traj.times[n];
    const Field& u = traj.u[n];
    Field gamma(g, 0.0), be(g, 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) be[k] = b(spec.extension(t, g.center(k)));
    double far = 0.0;
    for (std::size_t k : exterior) far += be[k];
    if (!exterior.empty()) far /= static_cast<double>(exterior.size());
    for (std::size_t k = 0; k < g.size(); ++k)
      if (traj.interior[k]) gamma[k] = b(u[k]) - be[k];
    r.lhs += bilinear_energy(gamma, gamma, stencil);

    const PointFn be_fn = [&](const Point& x) { return b(spec.extension(t, x)); };
    const Field lbe = apply_stencil(be, stencil, be_fn, far, &traj.interior);
    double ext = 0.0, op = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!traj.interior[k]) continue;
      const Point x = g.center(k);
      const double e = spec.extension(t, x);
      const double et = spec.extension_dt(t, x);
      const Point ge = spec.extension_grad(t, x);
      const double sgn = u[k] > e ? 1.0 : (u[k] < e ? -1.0 : 0.0);
      double flux_dot = 0.0;
      for (int a = 0; a < d; ++a) flux_dot += sgn * (spec.flux.component(a, u[k]) - spec.flux.component(a, e)) * ge[a];
      ext += ((u[k] - e) * et + flux_dot) * b.b.derivative(e);
      op += lbe[k] * gamma[k];
    }
    r.extension_term -= ext;
    r.operator_term += op;
  }
  r.lhs *= traj.dt;
  r.extension_term *= traj.dt * vol;
  r.operator_term *= traj.dt * vol;
  r.rhs = r.initial_term + r.extension_term + r.operator_term;
  r.slack = r.rhs - r.lhs;
  return r;
}

EnergySweep energy_refinement(const ProblemSpec& spec, const LevyMeasure& mu, const SchemeConfig& cfg,
                              const std::vector<double>& dx_list) {
  require(dx_list.size() >= 2, Errc::InvalidArgument, "a refinement sweep needs at least two grids");
  EnergySweep s;
  for (double dx : dx_list) {
    SchemeConfig c = cfg;
    c.dx = dx;
    c.r = cfg.r > 0.0 ? cfg.r : dx;
    const StencilWeights st = build_scheme_stencil(mu, c);
    const Trajectory tr = Scheme(spec, st, c).solve();
    const EnergyReport rep = energy_report(tr, spec, st);
    s.dx.push_back(dx);
    s.slack.push_back(rep.slack);
    s.lhs.push_back(rep.lhs);
    s.rhs.push_back(rep.rhs);
  }
  for (std::size_t i = 0; i + 1 < s.slack.size(); ++i) s.eps_grid.push_back(2.0 * std::abs(s.slack[i] - s.slack[i + 1]));
  return s;
}

SpaceTimeField gamma_series(const Trajectory& traj, const ProblemSpec& spec) {
  SpaceTimeField f;
  f.grid = traj.grid;
  f.dt = traj.dt;
  for (std::size_t n = 0; n < traj.steps(); ++n) f.slices.push_back(gamma_field(traj, spec, n));
  return f;
}

ModuliTable translation_moduli(const SpaceTimeField& g, const std::vector<int>& h_cells,
                               const std::vector<int>& tau_steps) {
  ModuliTable t;
  const Grid& grid = g.grid;
  const double vol = grid.cell_volume() * g.dt;
  auto at = [&](std::size_t n, int i, int j) {
    return grid.contains(i, j) ? g.slices[n][grid.flat(i, j)] : 0.0;
  };
  for (int h : h_cells) {
    double best = 0.0;
    for (int axis = 0; axis < grid.dim; ++axis) {
      const int di = axis == 0 ? h : 0, dj = axis == 1 ? h : 0;
      double sum = 0.0;
      for (std::size_t n = 0; n < g.slices.size(); ++n) {
        // Every lattice point where either the field or its translate can be nonzero.
        const int i0 = std::min(0, -di), i1 = grid.n[0] + std::max(0, -di);
        const int j0 = std::min(0, -dj), j1 = grid.n[1] + std::max(0, -dj);
        for (int j = j0; j < j1; ++j)
          for (int i = i0; i < i1; ++i) {
            const double d = at(n, i + di, j + dj) - at(n, i, j);
            sum += d * d;
          }
      }
      best = std::max(best, std::sqrt(sum * vol));
    }
    t.shifts_cells.push_back(h);
    t.space.push_back(best);
  }
  const long N = static_cast<long>(g.slices.size());
  for (int tau : tau_steps) {
    double sum = 0.0;
    const long lo = std::min(0L, -static_cast<long>(tau)), hi = N + std::max(0L, -static_cast<long>(tau));
    for (long n = lo; n < hi; ++n) {
      const long m = n + tau;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double a = (m >= 0 && m < N) ? g.slices[static_cast<std::size_t>(m)][k] : 0.0;
        const double b = (n >= 0 && n < N) ? g.slices[static_cast<std::size_t>(n)][k] : 0.0;
        sum += (a - b) * (a - b);
      }
    }
    t.shifts_steps.push_back(tau);
    t.time.push_back(std::sqrt(sum * vol));
  }
  return t;
}

UniformEnergySeries uniform_energy_series(const std::vector<EnergyRun>& runs, const ProblemSpec& spec) {
  UniformEnergySeries s;
  for (const auto& run : runs) {
    require(run.stencil && run.traj, Errc::InvalidArgument, "energy run is missing its stencil or trajectory");
    double e = 0.0;
    for (std::size_t n = 0; n < run.traj->steps(); ++n) {
      const Field g = gamma_field(*run.traj, spec, n);
      e += bilinear_energy(g, g, *run.stencil);
    }
    s.energy.push_back(e * run.traj->dt);
  }
  if (s.energy.empty()) return s;
  s.max = *std::max_element(s.energy.begin(), s.energy.end());
  std::vector<double> sorted = s.energy;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  s.median = m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  return s;
}

double worst_balance_defect(const Trajectory& traj) {
  double w = 0.0;
  for (const auto& b : traj.balance) w = std::max(w, std::abs(b.defect()));
  return w;
}

}  // namespace nldp
