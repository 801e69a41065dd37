// Acceptance run: one PASS/FAIL line per criterion. Instances, tolerances and
// wall-time limits are fixed here; a criterion fails if either its inequality
// or its time limit fails. Exit status is 0 only when all criteria pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "nldp/diagnostics.hpp"
#include "nldp/entropy.hpp"
#include "nldp/fourier.hpp"
#include "nldp/inequalities.hpp"
#include "nldp/multiplier.hpp"
#include "nldp/presets.hpp"
#include "nldp/scheme.hpp"

namespace {

using namespace nldp;

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 0x5eed;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failed;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failed += " [failed: " + what + "]";
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

SchemeConfig grid(double dx, double Z) {
  SchemeConfig c;
  c.dx = dx;
  c.Z = Z;
  return c;
}

// ---------------------------------------------------------------- 1, 2

void dyadic_a_goldens(Outcome& o) {
  const LevyMeasure a = LevyMeasure::dyadic_a();
  const double moment = validate_measure(a).levy_moment;
  o.require(std::abs(moment - 1.0 / 3.0) <= 1e-12, "levy_moment = 1/3");
  const MultiplierEval m(a);
  const double cap = 2.0 / 3.0 * kPi * kPi;
  double worst = -INFINITY;
  for (int n = 1; n <= 20; ++n) worst = std::max(worst, m(kPi * std::ldexp(1.0, n)));
  o.require(worst <= cap + 1e-10, "m(pi 2^n) <= 2 pi^2 / 3");
  double sup = 0.0;
  int arg = 0;
  for (int n = 1; n <= 40; ++n) {
    const double v = m(1.1 * std::ldexp(1.0, n));
    if (v > sup) {
      sup = v;
      arg = n;
    }
  }
  o.require(sup > 1e3, "sampled m(1.1 2^n) exceeds 1e3 for some n <= 40");
  o.detail << "moment=" << moment << " max m(pi2^n)=" << worst << " cap=" << cap << " sup m(1.1*2^n)=" << sup
           << " at n=" << arg;
}

void dyadic_b_goldens(Outcome& o) {
  const LevyMeasure b = LevyMeasure::dyadic_b();
  const double moment = validate_measure(b).levy_moment;
  o.require(std::abs(moment - 1.0) <= 1e-12, "levy_moment = 1");
  const MultiplierEval m(b);
  double worst_lower = INFINITY;
  for (int i = 0; i < 20; ++i) {
    const int n = i + 1;
    const double xi = (1.0 + i / 19.0) * std::ldexp(1.0, n);
    worst_lower = std::min(worst_lower, m(xi) - std::ldexp(1.0, n) * (1.0 - std::cos(1.0)));
  }
  o.require(worst_lower >= 0.0, "m(xi) >= 2^n (1 - cos 1)");
  double worst_zero = 0.0;
  for (int n = 1; n <= 12; ++n) {
    const MultiplierEval mn(b.restricted(std::ldexp(1.0, -n)));
    worst_zero = std::max(worst_zero, std::abs(mn(kPi * std::ldexp(1.0, n + 1))));
  }
  o.require(worst_zero <= 1e-10, "m_n(pi 2^(n+1)) = 0");
  o.detail << "moment=" << moment << " lower slack=" << worst_lower << " max |m_n zero|=" << worst_zero;
}

// ---------------------------------------------------------------- 3, 4

Field gaussian(int n) {
  Grid g;
  g.dim = 1;
  g.n = {n, 1};
  g.lo = {-20.0, 0.0};
  g.dx = 40.0 / n;
  Field f(g);
  for (std::size_t k = 0; k < g.size(); ++k) f[k] = std::exp(-g.center(k)[0] * g.center(k)[0]);
  return f;
}

double plancherel_error(const LevyMeasure& mu, int n, double Z) {
  const Field phi = gaussian(n);
  const MultiplierEval ev(mu);
  return fourier_energy_check(phi, ev, build_stencil(mu, phi.grid.dx, phi.grid.dx, Z)).rel_err;
}

void plancherel(Outcome& o) {
  // The atom sits on the lattice (26 cells) so the stencil represents it exactly.
  const double dx = 40.0 / 1024;
  const double atom = plancherel_error(LevyMeasure::single_atom(26.0 * dx, 0.5), 1024, 52.0 * dx);
  const double frac = plancherel_error(measure_preset("fractional_trunc"), 4096, 10.0);
  o.require(atom <= 1e-3, "single atom rel_err <= 1e-3");
  o.require(frac <= 1e-2, "truncated fractional rel_err <= 1e-2");
  o.detail << "single_atom rel_err=" << atom << " truncated_fractional rel_err=" << frac;
}

void sandwich(Outcome& o) {
  std::mt19937_64 rng(kSeed);
  double upper = INFINITY, lower = INFINITY;
  for (int i = 0; i < 20; ++i) {
    const SandwichResult s = multiplier_sandwich(random_atomic_measure(rng), 2000.0, 200000);
    upper = std::min(upper, 2.0 * s.total_mass - s.sup);
    lower = std::min(lower, s.sup - 0.95 * s.total_mass);
  }
  o.require(upper >= 0.0, "sup m <= 2 mass");
  o.require(lower >= 0.0, "sup m >= 0.95 mass");
  o.detail << "upper slack=" << upper << " lower slack=" << lower;
}

// ---------------------------------------------------------------- 5, 6

ProblemSpec matrix_problem(bool burgers, int diffusion) {
  ProblemSpec s = problem_preset("stefan_riemann");
  s.T = 0.5;
  s.flux = burgers ? FluxFn::burgers() : FluxFn::linear(1.0);
  s.diffusion = diffusion == 0 ? DiffusionFn::identity() : diffusion == 1 ? DiffusionFn::power(2.0) : DiffusionFn::stefan(0.5);
  return s;
}

template <class F>
void for_each_matrix_instance(F&& f) {
  for (bool burgers : {true, false})
    for (int b = 0; b < 3; ++b)
      for (const char* m : {"atomic", "fractional_trunc"}) f(matrix_problem(burgers, b), measure_preset(m));
}

void maximum_principle(Outcome& o) {
  const SchemeConfig cfg = grid(1.0 / 256, 0.25);
  double worst = INFINITY;
  std::size_t violations = 0, runs = 0;
  for_each_matrix_instance([&](const ProblemSpec& spec, const LevyMeasure& mu) {
    const MaxPrincipleVerdict v = max_principle_check(solve(spec, build_scheme_stencil(mu, cfg), cfg), 1e-12);
    worst = std::min(worst, v.worst_slack);
    violations += v.violations;
    ++runs;
  });
  o.require(violations == 0 && worst >= -1e-12, "no value outside the data range");
  o.detail << runs << " runs, violations=" << violations << " worst slack=" << worst;
}

void l1_contraction(Outcome& o) {
  const SchemeConfig cfg = grid(1.0 / 256, 0.25);
  const std::pair<double, double> perturbations[] = {{0.1, 0.5}, {-0.1, 0.5}, {0.1, 0.25}, {0.05, 0.75}, {-0.2, 0.35}};
  double worst = -INFINITY;
  std::size_t pairs = 0, failed = 0;
  for_each_matrix_instance([&](const ProblemSpec& spec, const LevyMeasure& mu) {
    const StencilWeights st = build_scheme_stencil(mu, cfg);
    for (const auto& [amp, c] : perturbations) {
      const ContractionSeries s = app::contraction_pair(spec, app::perturbed(spec, amp, c), st, cfg);
      worst = std::max(worst, s.worst_increase);
      failed += s.pass ? 0 : 1;
      ++pairs;
    }
  });
  o.require(failed == 0 && worst <= 1e-12, "per-step L1 distance nonincreasing");
  o.detail << pairs << " pairs, worst per-step increase=" << worst;
}

// ---------------------------------------------------------------- 7, 8, 9

void picard(Outcome& o) {
  ProblemSpec spec = problem_preset("linear_bump");
  spec.diffusion = DiffusionFn::identity();
  spec.T = 0.5;
  const SchemeConfig cfg = grid(1.0 / 256, 0.125);
  const LevyMeasure mu = LevyMeasure::single_atom(0.125, 0.5);  // total mass 1
  const double tol = 1e-12;
  const PicardResult p = picard_solve(spec, mu, cfg, 40, tol);
  const Scheme direct(spec, build_scheme_stencil(mu, cfg), cfg);
  const Check env = app::picard_envelope(p, direct.disc().lip_b, direct.horizon());
  const double dist = l1_distance_q(p.trajectory, direct.solve());
  o.require(p.gaps.size() > 8, "at least 8 iterations recorded");
  o.require(env.pass, "gap_k <= gap_0 q^k / k! * 1.1");
  o.require(dist <= 10.0 * tol, "Picard limit matches direct solve");
  o.detail << "mass=" << p.stencil_mass << " L_b=" << direct.disc().lip_b << " iterations=" << p.iterations
           << " envelope slack=" << env.worst_slack << " L1(Q) distance=" << dist;
}

void energy(Outcome& o) {
  // The zero exterior drains the bump; a shorter horizon keeps the energy well above rounding.
  ProblemSpec spec = problem_preset("burgers_bump");
  spec.T = 0.25;
  SchemeConfig cfg;
  cfg.Z = 0.25;
  const EnergySweep s = energy_refinement(spec, measure_preset("fractional_trunc"), cfg, {1.0 / 128, 1.0 / 256, 1.0 / 512});
  o.require(s.slack[1] >= -s.eps_grid[1], "slack >= -eps_grid at dx = 1/256");
  o.require(s.eps_grid[0] > s.eps_grid[1], "eps_grid decreasing");
  o.require(s.eps_grid[1] <= 1e-2, "eps_grid <= 1e-2");
  o.detail << "slack(1/128,1/256,1/512)=" << s.slack[0] << "," << s.slack[1] << "," << s.slack[2]
           << " eps_grid=" << s.eps_grid[0] << "," << s.eps_grid[1];
}

void entropy(Outcome& o) {
  SchemeConfig cfg;
  cfg.Z = 0.25;
  for (const auto& [p, m] : {std::pair{"burgers_riemann", "none"}, std::pair{"stefan_riemann", "fractional_trunc"}}) {
    const EntropySweep s = entropy_refinement(problem_preset(p), measure_preset(m), cfg, 1.0 / 128);
    o.require(s.pass, std::string(p) + " residual <= eps_grid");
    o.detail << p << "+" << m << ": triples=" << s.fine.admissible << " margin=" << s.worst_margin << "; ";
  }
}

// ---------------------------------------------------------------- 10, 11, 12

void vanishing_viscosity(Outcome& o) {
  ProblemSpec spec = problem_preset("burgers_rarefaction");
  spec.diffusion = DiffusionFn::identity();
  const ChainResult r = vanishing_viscosity_run(spec, 1.0, {1, 4, 16, 64}, grid(1.0 / 128, 0.5));
  std::vector<double> d;
  for (const auto& run : r.runs) d.push_back(run.l1_distance);
  o.require(app::decreasing_check("", d).pass, "strictly decreasing");
  o.require(d.back() <= 0.2 * d.front(), "final <= 0.2 initial");
  o.detail << "L1(Q) distances:";
  for (double v : d) o.detail << ' ' << v;
  o.detail << " ratio=" << d.back() / d.front();
}

void stability_chain(Outcome& o) {
  const app::StabilityEvidence ev =
      app::truncation_chain(problem_preset("burgers_bump"), LevyMeasure::fractional(1.0, 1, 1.0), {4, 8, 16, 32}, 64,
                            grid(1.0 / 256, 0.25));
  for (const auto& c : ev.checks) {
    o.require(c.pass, c.name);
    o.detail << c.name << " slack=" << c.worst_slack << "; ";
  }
  o.detail << "energy max/median=" << ev.energy.max / ev.energy.median;
}

void property_suites(Outcome& o) {
  const InequalityVerdict mean = mean_bound_check(10000, kSeed);
  const InequalityVerdict moll_id = mollification_random_trials(DiffusionFn::identity(), -1.0, 1.0, 10000, kSeed);
  const InequalityVerdict moll_st = mollification_random_trials(DiffusionFn::stefan(0.5), 0.0, 1.0, 10000, kSeed + 1);
  for (const auto& [name, v] : {std::pair{"mean_bound", &mean}, std::pair{"mollification_identity", &moll_id},
                                std::pair{"mollification_stefan", &moll_st}}) {
    // Mollification verdicts count every checked cell of the 10^4 random slices.
    o.require(v->trials >= 10000 && v->violations == 0, name);
    o.detail << name << ": trials=" << v->trials << " violations=" << v->violations << " slack=" << v->worst_slack
             << "; ";
  }
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number; default is all of them.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const std::vector<Criterion> criteria{
      {1, "dyadic_a goldens and unboundedness", 1.0, dyadic_a_goldens},
      {2, "dyadic_b goldens and truncation zeros", 1.0, dyadic_b_goldens},
      {3, "Plancherel identity of the energy", 5.0, plancherel},
      {4, "finite-measure multiplier sandwich", 5.0, sandwich},
      {5, "discrete maximum principle matrix", 60.0, maximum_principle},
      {6, "discrete L1 contraction matrix", 60.0, l1_contraction},
      {7, "Picard contraction envelope", 120.0, picard},
      {8, "energy inequality under refinement", 120.0, energy},
      {9, "entropy residual family", 120.0, entropy},
      {10, "vanishing viscosity chain", 180.0, vanishing_viscosity},
      {11, "truncation stability chain", 300.0, stability_chain},
      {12, "randomized inequality property suites", 10.0, property_suites},
  };
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.limit_seconds, "runtime limit");
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2d %s  %-40s  %.2fs/%.0fs  %s%s\n", c.id, o.pass ? "PASS" : "FAIL", c.name.c_str(), secs,
                c.limit_seconds, o.detail.str().c_str(), o.failed.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria pass\n", ran - failed, ran);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
