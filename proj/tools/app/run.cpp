#include "run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "experiments.hpp"
#include "nldp/diagnostics.hpp"
#include "nldp/error.hpp"
#include "nldp/inequalities.hpp"
#include "nldp/presets.hpp"

namespace nldp::app {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::vector<int> kModuliShifts{16, 8, 4, 2, 1};
const std::vector<int> kModuliSteps{16, 8, 4, 2, 1};

json trajectory_metrics(const Trajectory& traj) {
  return json{{"dt", traj.dt},
              {"dt_max", traj.dt_max},
              {"cfl_ratio", traj.cfl_ratio},
              {"steps", traj.steps()},
              {"range", {traj.range.lo, traj.range.hi}},
              {"cells", traj.grid.size()}};
}

json stencil_metrics(const StencilWeights& s) {
  return json{{"dx", s.dx},       {"r", s.r},         {"Z", s.Z},   {"reach", s.reach()},
              {"sigma2", s.sigma2}, {"weight_sum", s.weight_sum}, {"tail", s.tail}};
}

Report run_solve(const RunConfig& cfg, const fs::path& out) {
  const ProblemSpec spec = load_problem(cfg.problem);
  validate_problem(spec);
  const LevyMeasure mu = load_measure(cfg.measure, spec.dim());
  const StencilWeights stencil = build_scheme_stencil(mu, cfg.scheme);
  const Trajectory traj = Scheme(spec, stencil, cfg.scheme).solve();
  write_trajectory_csv(out / "trajectory.csv", traj);

  Report r;
  r.metrics["trajectory"] = trajectory_metrics(traj);
  r.metrics["stencil"] = stencil_metrics(stencil);
  r.timing["solve_seconds"] = traj.wall_seconds;
  if (cfg.scheme.tail == TailPolicy::Drop)
    r.metrics["drop_tail_error_bound"] = drop_tail_error_bound(mu, cfg.scheme, spec.diffusion, traj.range);

  if (cfg.toggles.max_principle) {
    const auto v = max_principle_check(traj);
    r.add(make_check("max_principle", v.pass, v.worst_slack,
                     {{"lo", v.lo}, {"hi", v.hi}, {"violations", static_cast<double>(v.violations)}}));
  }
  if (cfg.toggles.balance) {
    const double defect = worst_balance_defect(traj);
    r.add(make_check("mass_balance", defect <= kBalanceTol, kBalanceTol - defect, {{"worst_defect", defect}}));
  }
  if (cfg.toggles.contraction) {
    const auto c = contraction_pair(spec, perturbed(spec, 0.1), stencil, cfg.scheme);
    r.add(make_check("l1_contraction", c.pass, -c.worst_increase, {{"initial_l1", c.l1.front()}}));
  }
  if (cfg.toggles.energy) {
    const auto s = energy_refinement(spec, mu, cfg.scheme, {cfg.scheme.dx, cfg.scheme.dx / 2.0});
    const double eps = s.eps_grid.front();
    r.add(make_check("energy_inequality", s.slack.back() >= -eps, s.slack.back() + eps,
                     {{"slack_coarse", s.slack.front()}, {"slack_fine", s.slack.back()}, {"eps_grid", eps}}));
  }
  if (cfg.toggles.moduli) {
    const ModuliTable m = translation_moduli(gamma_series(traj, spec), kModuliShifts, kModuliSteps);
    write_moduli_csv(out / "moduli.csv", m, traj.grid.dx, traj.dt);
  }
  return r;
}

Report run_picard(const RunConfig& cfg, const fs::path& out) {
  const ProblemSpec spec = load_problem(cfg.problem);
  validate_problem(spec);
  const LevyMeasure mu = load_measure(cfg.measure, spec.dim());
  const PicardResult p = picard_solve(spec, mu, cfg.scheme, cfg.picard_max_iter, cfg.picard_tol);
  write_gaps_csv(out / "gaps.csv", p.gaps);
  write_trajectory_csv(out / "trajectory.csv", p.trajectory);

  const StencilWeights stencil = build_scheme_stencil(mu, cfg.scheme);
  const Scheme direct_scheme(spec, stencil, cfg.scheme);
  const Trajectory direct = direct_scheme.solve();
  const double dist = l1_distance_q(p.trajectory, direct);

  Report r;
  r.metrics["iterations"] = p.iterations;
  r.metrics["stencil_mass"] = p.stencil_mass;
  r.metrics["gaps"] = p.gaps;
  r.metrics["trajectory"] = trajectory_metrics(p.trajectory);
  const auto env = picard_envelope(p, direct_scheme.disc().lip_b, direct_scheme.horizon());
  r.add(make_check("picard_envelope", env.pass, env.worst_slack, env.params));
  r.add(make_check("picard_matches_direct", dist <= 10.0 * cfg.picard_tol, 10.0 * cfg.picard_tol - dist,
                   {{"l1q_distance", dist}}));
  return r;
}

Report run_vanishing(const RunConfig& cfg) {
  const ProblemSpec spec = load_problem(cfg.problem);
  validate_problem(spec);
  const ChainResult res = vanishing_viscosity_run(spec, cfg.alpha, cfg.chain, cfg.scheme);
  Report r;
  std::vector<double> d;
  for (const auto& run : res.runs) {
    d.push_back(run.l1_distance);
    r.metrics["runs"][run.label] = {{"l1_distance", run.l1_distance}, {"l2_b_distance", run.l2_b_distance}};
  }
  r.metrics["dt"] = res.dt;
  r.add(decreasing_check("l1_distance_decreasing", d));
  return r;
}

Report run_stability(const RunConfig& cfg, const fs::path& out) {
  const ProblemSpec spec = load_problem(cfg.problem);
  validate_problem(spec);
  const LevyMeasure base = load_measure(cfg.measure, spec.dim());
  const StabilityEvidence ev = truncation_chain(spec, base, cfg.truncations, cfg.reference_truncation, cfg.scheme);
  write_moduli_csv(out / "moduli.csv", ev.sup_moduli, cfg.scheme.dx, ev.chain.dt);
  Report r;
  for (const auto& run : ev.chain.runs)
    r.metrics["runs"][run.label] = {{"measure_distance", run.measure_distance},
                                    {"l1_distance", run.l1_distance},
                                    {"l2_b_distance", run.l2_b_distance}};
  r.metrics["uniform_energy"] = ev.energy.energy;
  for (auto& c : ev.checks) r.add(c);
  return r;
}

Report run_gallery(const fs::path& out) {
  const GalleryReport g = counterexample_gallery();
  {
    auto os = open_output(out / "gallery.csv");
    write_gallery_csv(os, g);
  }
  Report r;
  double worst = INFINITY;
  std::size_t failed_info = 0;
  for (const auto& row : g.rows) {
    if (!row.enforced) {
      failed_info += row.pass ? 0 : 1;
      continue;
    }
    worst = std::min(worst, row.pass ? 0.0 : -1.0);
  }
  r.metrics["rows"] = g.rows.size();
  r.metrics["informational_rows_below_target"] = failed_info;
  r.add(make_check("counterexample_gallery", g.pass, worst));
  return r;
}

}  // namespace

Report run(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path out(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  require(!ec, Errc::IoFailure, "cannot create '" + out.string() + "': " + ec.message());

  Report r;
  switch (cfg.mode) {
    case Mode::Solve: r = run_solve(cfg, out); break;
    case Mode::Picard: r = run_picard(cfg, out); break;
    case Mode::Vanishing: r = run_vanishing(cfg); break;
    case Mode::Stability: r = run_stability(cfg, out); break;
    case Mode::Gallery: r = run_gallery(out); break;
  }
  r.timing["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_report(out / "report.json", r, to_json(cfg));
  return r;
}

}  // namespace nldp::app
