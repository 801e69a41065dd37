#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <thread>

#include "experiments.hpp"
#include "nldp/entropy.hpp"
#include "nldp/error.hpp"
#include "nldp/fourier.hpp"
#include "nldp/inequalities.hpp"
#include "nldp/presets.hpp"
#include "run.hpp"

namespace nldp::app {

namespace {

using Task = std::function<std::vector<Check>()>;

int worker_count() {
  const char* env = std::getenv("NLDP_THREADS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return std::clamp(n, 1, 64);
}

/// Runs every task and concatenates the checks in task order.
std::vector<Check> run_tasks(const std::vector<Task>& tasks) {
  std::vector<std::vector<Check>> results(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int n = std::min<int>(worker_count(), static_cast<int>(tasks.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) fail(Errc::InvalidArgument, "suite task failed: " + e);
  std::vector<Check> all;
  for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
  return all;
}

Field gaussian_field(int n, double lo, double hi) {
  Grid g;
  g.dim = 1;
  g.n = {n, 1};
  g.lo = {lo, 0.0};
  g.dx = (hi - lo) / n;
  Field f(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.center(k)[0];
    f[k] = std::exp(-x * x);
  }
  return f;
}

Check fourier_case(const std::string& name, const LevyMeasure& mu, int n, double Z, double tol) {
  const Field phi = gaussian_field(n, -20.0, 20.0);
  const MultiplierEval ev(mu);
  const StencilWeights s = build_stencil(mu, phi.grid.dx, phi.grid.dx, Z);
  const FourierEnergyCheck c = fourier_energy_check(phi, ev, s);
  return make_check(name, c.rel_err <= tol, tol - c.rel_err, {{"lhs", c.lhs}, {"rhs", c.rhs}, {"rel_err", c.rel_err}});
}

Check verdict_check(const std::string& name, const InequalityVerdict& v) {
  return make_check(name, v.pass, v.worst_slack,
                    {{"trials", static_cast<double>(v.trials)}, {"violations", static_cast<double>(v.violations)}});
}

std::vector<Task> appendix_tasks(std::uint64_t seed) {
  std::vector<Task> t;
  t.push_back([] {
    const GalleryReport g = counterexample_gallery();
    std::size_t enforced = 0;
    for (const auto& r : g.rows) enforced += r.enforced ? 1 : 0;
    return std::vector<Check>{make_check("gallery_enforced_rows", g.pass, g.pass ? 0.0 : -1.0,
                                         {{"enforced_rows", static_cast<double>(enforced)}})};
  });
  t.push_back([] {
    const Grid g = gaussian_field(1024, -20.0, 20.0).grid;
    const double z = 26.0 * g.dx;
    return std::vector<Check>{fourier_case("plancherel_single_atom", LevyMeasure::single_atom(z, 0.5), 1024, 2.0 * z, 1e-3)};
  });
  t.push_back([] {
    return std::vector<Check>{fourier_case("plancherel_truncated_fractional", measure_preset("fractional_trunc"), 4096,
                                           10.0, 1e-2)};
  });
  t.push_back([seed] {
    std::mt19937_64 rng(seed);
    double worst_upper = INFINITY, worst_lower = INFINITY;
    for (int i = 0; i < 20; ++i) {
      const SandwichResult s = multiplier_sandwich(random_atomic_measure(rng), 2000.0, 200000);
      worst_upper = std::min(worst_upper, 2.0 * s.total_mass - s.sup);
      worst_lower = std::min(worst_lower, s.sup - 0.95 * s.total_mass);
    }
    return std::vector<Check>{make_check("sandwich_upper", worst_upper >= 0.0, worst_upper),
                              make_check("sandwich_lower", worst_lower >= 0.0, worst_lower)};
  });
  t.push_back([seed] { return std::vector<Check>{verdict_check("mean_bound", mean_bound_check(10000, seed))}; });
  t.push_back([seed] {
    return std::vector<Check>{
        verdict_check("mollification_identity", mollification_random_trials(DiffusionFn::identity(), -1.0, 1.0, 10000, seed)),
        verdict_check("mollification_stefan", mollification_random_trials(DiffusionFn::stefan(0.5), 0.0, 1.0, 10000, seed + 1))};
  });
  return t;
}

/// Riemann data 1 | 0 with the requested flux and diffusion.
ProblemSpec matrix_instance(const std::string& flux, const std::string& diffusion) {
  ProblemSpec s = problem_preset("stefan_riemann");
  s.name = flux + "+" + diffusion;
  s.flux = flux == "burgers" ? FluxFn::burgers() : FluxFn::linear(1.0);
  if (diffusion == "identity") s.diffusion = DiffusionFn::identity();
  if (diffusion == "porous") s.diffusion = DiffusionFn::power(2.0);
  if (diffusion == "stefan") s.diffusion = DiffusionFn::stefan(0.5);
  return s;
}

std::vector<Task> apriori_tasks() {
  std::vector<Task> t;
  for (const char* f : {"burgers", "linear"})
    for (const char* b : {"identity", "porous", "stefan"})
      for (const char* m : {"atomic", "fractional_trunc"})
        t.push_back([f = std::string(f), b = std::string(b), m = std::string(m)] {
          const ProblemSpec spec = matrix_instance(f, b);
          SchemeConfig cfg;
          cfg.dx = 1.0 / 256.0;
          cfg.Z = 0.25;
          const StencilWeights st = build_scheme_stencil(measure_preset(m), cfg);
          const MaxPrincipleVerdict v = max_principle_check(Scheme(spec, st, cfg).solve());
          double worst_increase = -INFINITY;
          bool pass = true;
          const std::pair<double, double> perturbations[] = {{0.1, 0.5}, {-0.1, 0.5}, {0.1, 0.25}, {0.05, 0.75}, {-0.2, 0.35}};
          for (const auto& [amp, c] : perturbations) {
            const ContractionSeries s = contraction_pair(spec, perturbed(spec, amp, c), st, cfg);
            worst_increase = std::max(worst_increase, s.worst_increase);
            pass = pass && s.pass;
          }
          const std::string tag = spec.name + "+" + m;
          return std::vector<Check>{make_check("max_principle:" + tag, v.pass, v.worst_slack),
                                    make_check("l1_contraction:" + tag, pass, -worst_increase)};
        });
  t.push_back([] {
    ProblemSpec spec = problem_preset("burgers_bump");
    spec.T = 0.25;
    SchemeConfig cfg;
    cfg.Z = 0.25;
    const EnergySweep s = energy_refinement(spec, measure_preset("fractional_trunc"), cfg, {1.0 / 128, 1.0 / 256, 1.0 / 512});
    const double eps = s.eps_grid[1];
    return std::vector<Check>{
        make_check("energy_inequality", s.slack[1] >= -eps && s.eps_grid[0] > s.eps_grid[1] && eps <= 1e-2,
                   s.slack[1] + eps, {{"slack", s.slack[1]}, {"eps_grid", eps}, {"eps_grid_coarse", s.eps_grid[0]}})};
  });
  for (const auto& [p, m] : {std::pair<const char*, const char*>{"burgers_riemann", "none"}, {"stefan_riemann", "fractional_trunc"}})
    t.push_back([p = std::string(p), m = std::string(m)] {
      SchemeConfig cfg;
      cfg.Z = 0.25;
      const EntropySweep s = entropy_refinement(problem_preset(p), measure_preset(m), cfg, 1.0 / 128);
      return std::vector<Check>{make_check("entropy:" + p + "+" + m, s.pass, s.worst_margin,
                                           {{"constant", s.constant}, {"eps_fine", s.eps_fine},
                                            {"admissible", static_cast<double>(s.fine.admissible)}})};
    });
  return t;
}

std::vector<Task> chains_tasks() {
  std::vector<Task> t;
  t.push_back([] {
    ProblemSpec spec = problem_preset("burgers_rarefaction");
    spec.diffusion = DiffusionFn::identity();
    SchemeConfig cfg;
    cfg.dx = 1.0 / 128;
    cfg.Z = 0.5;
    const ChainResult res = vanishing_viscosity_run(spec, 1.0, {1, 4, 16, 64}, cfg);
    std::vector<double> d;
    for (const auto& r : res.runs) d.push_back(r.l1_distance);
    const double ratio = d.back() / d.front();
    return std::vector<Check>{decreasing_check("vanishing_viscosity_decreasing", d),
                              make_check("vanishing_viscosity_ratio", ratio <= 0.2, 0.2 - ratio, {{"ratio", ratio}})};
  });
  t.push_back([] {
    SchemeConfig cfg;
    cfg.dx = 1.0 / 256;
    cfg.Z = 0.25;
    const ProblemSpec spec = problem_preset("burgers_bump");
    StabilityEvidence ev = truncation_chain(spec, measure_preset("fractional"), {4, 8, 16, 32}, 64, cfg);
    for (auto& c : ev.checks) c.name = "stability:" + c.name;
    return ev.checks;
  });
  t.push_back([] {
    SchemeConfig cfg;
    cfg.dx = 1.0 / 256;
    cfg.Z = 0.25;
    const ProblemSpec spec = problem_preset("burgers_bump");
    const LevyMeasure atom = measure_preset("atomic");
    std::vector<LevyMeasure> mus;
    for (double eps : {1.0, 0.25, 0.0625})
      mus.push_back(LevyMeasure::sum({atom, LevyMeasure::scaled(eps, measure_preset("fractional"))}));
    const ChainResult res = stability_run(spec, mus, atom, cfg);
    std::vector<double> d;
    for (const auto& r : res.runs) d.push_back(r.l1_distance);
    return std::vector<Check>{decreasing_check("epsilon_chain_decreasing", d)};
  });
  t.push_back([] {
    ProblemSpec spec = problem_preset("linear_bump");
    spec.diffusion = DiffusionFn::identity();
    SchemeConfig cfg;
    cfg.dx = 1.0 / 256;
    cfg.Z = 0.125;
    const double tol = 1e-12;
    const LevyMeasure mu = LevyMeasure::single_atom(0.125, 0.5);
    const PicardResult p = picard_solve(spec, mu, cfg, 40, tol);
    const Scheme direct(spec, build_scheme_stencil(mu, cfg), cfg);
    const double dist = l1_distance_q(p.trajectory, direct.solve());
    return std::vector<Check>{picard_envelope(p, direct.disc().lip_b, direct.horizon()),
                              make_check("picard_matches_direct", dist <= 10.0 * tol, 10.0 * tol - dist,
                                         {{"l1q_distance", dist}})};
  });
  return t;
}

}  // namespace

std::vector<std::string> suite_names() { return {"appendix", "apriori", "chains"}; }

Report run_suite(const std::string& name, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Task> tasks;
  if (name == "appendix")
    tasks = appendix_tasks(seed);
  else if (name == "apriori")
    tasks = apriori_tasks();
  else if (name == "chains")
    tasks = chains_tasks();
  else
    fail(Errc::UnknownSuite, "unknown suite '" + name + "'");
  Report r;
  for (auto& c : run_tasks(tasks)) r.add(std::move(c));
  r.metrics["suite"] = name;
  r.timing["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace nldp::app
