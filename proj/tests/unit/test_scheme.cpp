#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "nldp/diagnostics.hpp"
#include "nldp/error.hpp"
#include "nldp/presets.hpp"
#include "nldp/scheme.hpp"
#include "oracles.hpp"

namespace nldp {
namespace {

template <class F>
void expect_errc(F&& f, Errc code) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

SchemeConfig config(double dx, double Z = 0.25) {
  SchemeConfig c;
  c.dx = dx;
  c.Z = Z;
  return c;
}

Eigen::VectorXd interior_vector(const Field& u, const std::vector<std::uint8_t>& interior) {
  std::vector<double> v;
  for (std::size_t k = 0; k < u.size(); ++k)
    if (interior[k]) v.push_back(u[k]);
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

TEST(Cfl, FormulaInstances) {
  const StencilWeights none = build_stencil(LevyMeasure::zero(), 0.01, 0.01, 0.01);
  EXPECT_DOUBLE_EQ(cfl_max_dt(1, 0.01, 1.0, 0.0, none), 0.005);
  EXPECT_TRUE(std::isinf(cfl_max_dt(1, 0.01, 0.0, 0.0, none)));
  const StencilWeights atom = build_stencil(LevyMeasure::single_atom(0.1, 0.5), 0.1, 0.1, 0.2);
  ASSERT_DOUBLE_EQ(atom.weight_sum, 1.0);
  EXPECT_DOUBLE_EQ(cfl_max_dt(1, 0.1, 1.0, 1.0, atom), 1.0 / 21.0);
  expect_errc([&] { cfl_max_dt(1, 0.0, 1.0, 1.0, atom); }, Errc::DegenerateGrid);
}

TEST(Cfl, UniformStepNeverExceedsTheBound) {
  const ProblemSpec spec = problem_preset("burgers_bump");
  const SchemeConfig cfg = config(1.0 / 64);
  const Scheme s(spec, build_scheme_stencil(measure_preset("fractional_trunc"), cfg), cfg);
  EXPECT_LE(s.dt(), s.dt_max());
  EXPECT_NEAR(s.dt() * s.steps(), spec.T, 1e-12);
}

TEST(Cfl, ViolationIsRaisedUnlessAllowed) {
  const ProblemSpec spec = problem_preset("burgers_riemann");
  SchemeConfig cfg = config(1.0 / 64);
  const StencilWeights st = build_scheme_stencil(LevyMeasure::zero(), cfg);
  cfg.auto_cfl = false;
  cfg.dt = 2.0 * Scheme(spec, st, config(1.0 / 64)).dt_max();
  expect_errc([&] { Scheme(spec, st, cfg); }, Errc::CflViolation);
  cfg.allow_cfl_violation = true;
  EXPECT_NO_THROW(Scheme(spec, st, cfg));
}

TEST(Step, ConstantStateIsExact) {
  const ProblemSpec spec = problem_preset("constant");
  const SchemeConfig cfg = config(1.0 / 32);
  const Trajectory tr = solve(spec, build_scheme_stencil(measure_preset("fractional_trunc"), cfg), cfg);
  for (const auto& u : tr.u)
    for (double v : u.v) EXPECT_EQ(v, 1.0);
}

TEST(Step, LinearTransportIsFirstOrderUpwind) {
  const ProblemSpec spec = problem_preset("linear_bump");
  const SchemeConfig cfg = config(1.0 / 64);
  const Scheme s(spec, build_scheme_stencil(LevyMeasure::zero(), cfg), cfg);
  const Field u = s.initial();
  const Field v = s.step(u, 0.0, s.dt());
  const double lambda = s.dt() / cfg.dx;
  for (std::size_t k = 1; k < u.size(); ++k)
    if (s.disc().interior[k]) EXPECT_NEAR(v[k], u[k] - lambda * (u[k] - u[k - 1]), 1e-15);
}

TEST(Step, LinearTransportConvergesToTheTranslate) {
  const ProblemSpec spec = problem_preset("linear_bump");
  std::vector<double> errs;
  for (int n : {64, 128, 256}) {
    SchemeConfig cfg = config(1.0 / n);
    cfg.T = 0.15;
    const Trajectory tr = solve(spec, build_scheme_stencil(LevyMeasure::zero(), cfg), cfg);
    double err = 0.0;
    for (std::size_t k = 0; k < tr.grid.size(); ++k)
      if (tr.interior[k]) err += std::abs(tr.u.back()[k] - cos4_bump(tr.grid.center(k)[0] - 0.15, 0.5, 0.3)) * tr.grid.dx;
    errs.push_back(err);
  }
  EXPECT_GT(errs[0] / errs[1], 1.6);
  EXPECT_GT(errs[1] / errs[2], 1.6);
}

TEST(Step, PureDiffusionIsForwardEulerOfTheStencilMatrix) {
  ProblemSpec spec = problem_preset("unit_in_zero_out");
  spec.diffusion = DiffusionFn::identity();
  spec.u0 = [](const Point& x) { return cos4_bump(x[0], 0.5, 0.4); };
  SchemeConfig cfg = config(1.0 / 64);
  const StencilWeights st = build_scheme_stencil(LevyMeasure::atomic({{{3.0 / 64, 0.0}, 2.0}, {{10.0 / 64, 0.0}, 1.0}}), cfg);
  const Scheme s(spec, st, cfg);
  const Eigen::MatrixXd A = oracle::stencil_matrix(st, s.disc().grid, s.disc().interior);
  const Field u0 = s.initial();
  const Eigen::VectorXd x0 = interior_vector(u0, s.disc().interior);
  const Field u1 = s.step(u0, 0.0, s.dt());
  const Eigen::VectorXd expect = x0 + s.dt() * (A * x0);
  EXPECT_LT((interior_vector(u1, s.disc().interior) - expect).lpNorm<Eigen::Infinity>(), 1e-14);
}

TEST(Step, PureDiffusionTrajectoryApproachesTheMatrixExponential) {
  ProblemSpec spec = problem_preset("unit_in_zero_out");
  spec.diffusion = DiffusionFn::identity();
  spec.u0 = [](const Point& x) { return cos4_bump(x[0], 0.5, 0.4); };
  spec.T = 0.25;
  SchemeConfig cfg = config(1.0 / 64);
  const StencilWeights st = build_scheme_stencil(LevyMeasure::single_atom(4.0 / 64, 3.0), cfg);
  const Scheme base(spec, st, cfg);
  const Eigen::MatrixXd A = oracle::stencil_matrix(st, base.disc().grid, base.disc().interior);
  const Eigen::VectorXd x0 = interior_vector(base.initial(), base.disc().interior);
  const Eigen::VectorXd exact = (A * spec.T).exp() * x0;
  std::vector<double> errs;
  for (double frac : {0.25, 0.125, 0.0625}) {
    SchemeConfig c = cfg;
    c.auto_cfl = false;
    c.dt = base.dt_max() * frac;
    const Trajectory tr = Scheme(spec, st, c).solve();
    errs.push_back((interior_vector(tr.u.back(), tr.interior) - exact).lpNorm<Eigen::Infinity>());
  }
  EXPECT_LT(errs[0], 0.05);
  EXPECT_NEAR(errs[0] / errs[1], 2.0, 0.3);
  EXPECT_NEAR(errs[1] / errs[2], 2.0, 0.3);
}

TEST(Solve, BurgersShockMovesAtTheRankineHugoniotSpeed) {
  const ProblemSpec spec = problem_preset("burgers_riemann");
  for (int n : {128, 256}) {
    const SchemeConfig cfg = config(1.0 / n);
    const Trajectory tr = solve(spec, build_scheme_stencil(LevyMeasure::zero(), cfg), cfg);
    // Shock position from the interior mass: u = 1 left of the shock, 0 right of it.
    double mass = 0.0;
    for (std::size_t k = 0; k < tr.grid.size(); ++k)
      if (tr.interior[k]) mass += tr.u.back()[k] * tr.grid.dx;
    EXPECT_NEAR(mass, 0.5 + 0.5 * spec.T, 2.0 / n);
  }
}

TEST(Solve, StefanAboveTheRangeIsBitIdenticalToHyperbolic) {
  ProblemSpec hyper = problem_preset("burgers_riemann");
  ProblemSpec stefan = hyper;
  stefan.diffusion = DiffusionFn::stefan(2.0);
  const SchemeConfig cfg = config(1.0 / 64);
  const StencilWeights st = build_scheme_stencil(measure_preset("fractional_trunc"), cfg);
  const Trajectory a = solve(hyper, st, cfg), b = solve(stefan, st, cfg);
  ASSERT_EQ(a.dt, b.dt);
  ASSERT_EQ(a.u.size(), b.u.size());
  for (std::size_t n = 0; n < a.u.size(); ++n) EXPECT_EQ(a.u[n].v, b.u[n].v);
}

TEST(Solve, DyadicDiffusionOfConstantDataIsConstant) {
  ProblemSpec spec = problem_preset("constant");
  spec.flux = FluxFn::zero();
  const SchemeConfig cfg = config(1.0 / 32, 0.5);
  const Trajectory tr = solve(spec, build_scheme_stencil(measure_preset("dyadic_b"), cfg), cfg);
  for (const auto& u : tr.u)
    for (double v : u.v) EXPECT_EQ(v, 1.0);
}

TEST(Solve, MassBalanceCloses) {
  for (const char* p : {"burgers_bump", "stefan_riemann", "sine_decay", "ball2d"}) {
    const ProblemSpec spec = problem_preset(p);
    const SchemeConfig cfg = config(spec.dim() == 2 ? 1.0 / 32 : 1.0 / 128);
    const Trajectory tr = solve(spec, build_scheme_stencil(measure_preset("atomic", spec.dim()), cfg), cfg);
    EXPECT_LE(worst_balance_defect(tr), 1e-12) << p;
    EXPECT_TRUE(max_principle_check(tr).pass) << p;
  }
}

TEST(Solve, LaxFriedrichsIsMonotoneToo) {
  const ProblemSpec spec = problem_preset("stefan_riemann");
  SchemeConfig cfg = config(1.0 / 128);
  cfg.flux = NumericalFlux::LaxFriedrichs;
  const Trajectory tr = solve(spec, build_scheme_stencil(measure_preset("fractional_trunc"), cfg), cfg);
  EXPECT_TRUE(max_principle_check(tr).pass);
}

// Brute-force monotonicity: raising any single input value never lowers any output.
TEST(Property, StepIsOrderPreserving) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (const char* m : {"atomic", "fractional_trunc"})
    for (const auto& b : {DiffusionFn::identity(), DiffusionFn::power(2.0), DiffusionFn::stefan(0.5)})
      for (NumericalFlux flux : {NumericalFlux::EngquistOsher, NumericalFlux::LaxFriedrichs}) {
        ProblemSpec spec = problem_preset("stefan_riemann");
        spec.diffusion = b;
        SchemeConfig cfg = config(1.0 / 4, 0.5);
        cfg.flux = flux;
        const StencilWeights st = build_scheme_stencil(measure_preset(m), cfg);
        const Scheme s(spec, st, cfg);
        for (int trial = 0; trial < 40; ++trial) {
          Field u = s.initial();
          for (std::size_t k : s.disc().interior_cells) u[k] = U(rng);
          const Field base = s.step(u, 0.0, s.dt());
          for (std::size_t k : s.disc().interior_cells) {
            Field w = u;
            w[k] = std::min(1.0, w[k] + U(rng) * (1.0 - w[k]));
            const Field up = s.step(w, 0.0, s.dt());
            for (std::size_t i : s.disc().interior_cells) EXPECT_GE(up[i], base[i] - 1e-15);
          }
        }
      }
}

TEST(Property, RandomDataContractInL1) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double a1 = U(rng), a2 = U(rng), c1 = U(rng), c2 = U(rng);
    ProblemSpec u = problem_preset("stefan_riemann");
    ProblemSpec v = u;
    u.u0 = [=](const Point& x) { return 0.5 + 0.5 * a1 * std::sin(7.0 * x[0] + c1); };
    v.u0 = [=](const Point& x) { return 0.5 + 0.5 * a2 * std::cos(5.0 * x[0] + c2); };
    SchemeConfig cfg = config(1.0 / 64);
    cfg.T = 0.2;
    const StencilWeights st = build_scheme_stencil(measure_preset("fractional_trunc"), cfg);
    cfg.auto_cfl = false;
    cfg.dt = std::min(Scheme(u, st, config(1.0 / 64)).dt_max(), Scheme(v, st, config(1.0 / 64)).dt_max());
    const ContractionSeries c = l1_contraction_check(Scheme(u, st, cfg).solve(), Scheme(v, st, cfg).solve());
    EXPECT_TRUE(c.pass) << c.worst_increase;
  }
}

TEST(Picard, HyperbolicProblemConvergesImmediately) {
  const ProblemSpec spec = problem_preset("linear_bump");
  const PicardResult p = picard_solve(spec, measure_preset("atomic"), config(1.0 / 64, 0.125), 10, 1e-14);
  EXPECT_TRUE(p.converged);
  ASSERT_GE(p.gaps.size(), 2u);
  EXPECT_EQ(p.gaps[1], 0.0);
}

TEST(Picard, InfiniteMassIsRejected) {
  const ProblemSpec spec = problem_preset("burgers_bump");
  expect_errc([&] { picard_solve(spec, measure_preset("fractional"), config(1.0 / 64), 10, 1e-10); },
              Errc::InvalidArgument);
}

TEST(Picard, StagnationRaisesNoConvergence) {
  ProblemSpec spec = problem_preset("linear_bump");
  spec.diffusion = DiffusionFn::identity();
  expect_errc([&] { picard_solve(spec, measure_preset("atomic"), config(1.0 / 64, 0.125), 2, 1e-14); },
              Errc::NoConvergence);
}

TEST(Distances, MismatchedTrajectoriesAreRejected) {
  const ProblemSpec spec = problem_preset("burgers_bump");
  const Trajectory a = solve(spec, build_scheme_stencil(LevyMeasure::zero(), config(1.0 / 32)), config(1.0 / 32));
  const Trajectory b = solve(spec, build_scheme_stencil(LevyMeasure::zero(), config(1.0 / 64)), config(1.0 / 64));
  expect_errc([&] { l1_distance_q(a, b); }, Errc::ConfigMismatch);
  EXPECT_EQ(l1_distance_q(a, a), 0.0);
  EXPECT_EQ(sup_l1_distance(a, a), 0.0);
}

TEST(Chains, IdenticalMeasuresGiveZeroDistances) {
  const ProblemSpec spec = problem_preset("burgers_bump");
  const auto mu = measure_preset("atomic");
  const ChainResult r = stability_run(spec, {mu, mu}, mu, config(1.0 / 64));
  for (const auto& run : r.runs) {
    EXPECT_EQ(run.l1_distance, 0.0);
    EXPECT_EQ(run.measure_distance, 0.0);
  }
}

TEST(Chains, DegenerateViscosityGivesZeroDistances) {
  ProblemSpec spec = problem_preset("burgers_riemann");
  spec.diffusion = DiffusionFn::stefan(2.0);
  const ChainResult r = vanishing_viscosity_run(spec, 1.0, {1, 4}, config(1.0 / 64));
  for (const auto& run : r.runs) EXPECT_EQ(run.l1_distance, 0.0);
}

TEST(TailPolicy, DropRemovesTheTailAndBoundsTheChange) {
  SchemeConfig cfg = config(1.0 / 64);
  const LevyMeasure mu = measure_preset("fractional");
  EXPECT_NEAR(build_scheme_stencil(mu, cfg).tail, 2.0 / cfg.Z, 1e-8);
  cfg.tail = TailPolicy::Drop;
  const StencilWeights dropped = build_scheme_stencil(mu, cfg);
  EXPECT_EQ(dropped.tail, 0.0);
  // Fractional tail beyond Z is 2 c / Z; b = identity on [0, 1] has sup 1.
  EXPECT_NEAR(drop_tail_error_bound(mu, cfg, DiffusionFn::identity(), {0.0, 1.0}), 2.0 * 2.0 / cfg.Z, 1e-8);
  const ProblemSpec spec = problem_preset("burgers_bump");
  EXPECT_TRUE(max_principle_check(solve(spec, dropped, cfg)).pass);
}

}  // namespace
}  // namespace nldp
