#include "experiments.hpp"

#include <algorithm>
#include <cmath>

#include "nldp/presets.hpp"

namespace nldp::app {

ProblemSpec perturbed(const ProblemSpec& spec, double amp, double center_frac) {
  ProblemSpec v = spec;
  const Point lo = spec.domain.box_lo(), hi = spec.domain.box_hi();
  const int d = spec.dim();
  Point c{0.0, 0.0};
  double w = INFINITY;
  for (int a = 0; a < d; ++a) {
    c[a] = lo[a] + center_frac * (hi[a] - lo[a]);
    w = std::min(w, 0.25 * (hi[a] - lo[a]));
  }
  const auto base = spec.u0;
  v.u0 = [=](const Point& x) {
    Point dx{x[0] - c[0], x[1] - c[1]};
    return base(x) + cos4_bump(norm(dx, d), 0.0, w, amp);
  };
  return v;
}

ContractionSeries contraction_pair(const ProblemSpec& u, const ProblemSpec& v, const StencilWeights& stencil,
                                   const SchemeConfig& cfg) {
  SchemeConfig c = cfg;
  c.dt = std::min(Scheme(u, stencil, cfg).dt(), Scheme(v, stencil, cfg).dt());
  c.auto_cfl = false;
  return l1_contraction_check(Scheme(u, stencil, c).solve(), Scheme(v, stencil, c).solve());
}

Check picard_envelope(const PicardResult& p, double lip_b, double T) {
  Check c;
  c.name = "picard_envelope";
  c.pass = !p.gaps.empty();
  c.worst_slack = INFINITY;
  const double q = 2.0 * lip_b * p.stencil_mass * T;
  double factorial = 1.0;
  for (std::size_t k = 1; k < p.gaps.size() && k <= 8; ++k) {
    factorial *= static_cast<double>(k);
    const double bound = p.gaps.front() * std::pow(q, static_cast<double>(k)) / factorial * 1.1;
    c.worst_slack = std::min(c.worst_slack, bound - p.gaps[k]);
    if (p.gaps[k] > bound) c.pass = false;
  }
  c.params = {{"rate", q}, {"gap0", p.gaps.empty() ? 0.0 : p.gaps.front()}};
  return c;
}

Check decreasing_check(const std::string& name, const std::vector<double>& v) {
  Check c;
  c.name = name;
  c.pass = v.size() >= 2;
  c.worst_slack = INFINITY;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    c.worst_slack = std::min(c.worst_slack, v[i] - v[i + 1]);
    if (!(v[i + 1] < v[i])) c.pass = false;
  }
  if (!v.empty()) c.params = {{"first", v.front()}, {"last", v.back()}};
  return c;
}

StabilityEvidence truncation_chain(const ProblemSpec& spec, const LevyMeasure& base, const std::vector<int>& n_list,
                                   int reference, const SchemeConfig& cfg) {
  std::vector<LevyMeasure> mus;
  std::vector<std::string> labels;
  for (int n : n_list) {
    mus.push_back(base.restricted(1.0 / n));
    labels.push_back("r=1/" + std::to_string(n));
  }
  StabilityEvidence ev;
  ev.chain = stability_run(spec, mus, base.restricted(1.0 / reference), cfg, labels);

  std::vector<double> tv, l2;
  std::vector<EnergyRun> runs;
  const std::vector<int> shifts{16, 8, 4, 2, 1};
  ev.sup_moduli.shifts_cells = shifts;
  ev.sup_moduli.space.assign(shifts.size(), 0.0);
  for (const auto& run : ev.chain.runs) {
    tv.push_back(run.measure_distance);
    l2.push_back(run.l2_b_distance);
    runs.push_back({&run.stencil, &run.traj});
    const ModuliTable m = translation_moduli(gamma_series(run.traj, spec), shifts, {});
    for (std::size_t i = 0; i < shifts.size(); ++i) ev.sup_moduli.space[i] = std::max(ev.sup_moduli.space[i], m.space[i]);
  }
  ev.energy = uniform_energy_series(runs, spec);

  ev.checks.push_back(decreasing_check("measure_distance_decreasing", tv));
  ev.checks.push_back(decreasing_check("l2_b_distance_decreasing", l2));
  Check e;
  e.name = "uniform_energy_bounded";
  e.worst_slack = 1.1 * ev.energy.median - ev.energy.max;
  e.pass = e.worst_slack >= 0.0;
  e.params = {{"max", ev.energy.max}, {"median", ev.energy.median}};
  ev.checks.push_back(e);
  ev.checks.push_back(decreasing_check("sup_space_modulus_decreasing", ev.sup_moduli.space));
  return ev;
}

}  // namespace nldp::app
