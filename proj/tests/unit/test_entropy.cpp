#include <gtest/gtest.h>

#include <cmath>

#include "nldp/entropy.hpp"
#include "nldp/error.hpp"
#include "nldp/presets.hpp"

namespace nldp {
namespace {

SchemeConfig config(double dx) {
  SchemeConfig c;
  c.dx = dx;
  c.Z = 0.25;
  return c;
}

TEST(TestFamily, ShapeAndLevels) {
  const ProblemSpec spec = problem_preset("stefan_riemann");
  const TestFunctionFamily fam = default_test_family(spec, {0.0, 1.0});
  EXPECT_EQ(fam.phis.size(), 27u);
  ASSERT_EQ(fam.levels.size(), 7u);
  EXPECT_DOUBLE_EQ(fam.levels.front(), -0.1);
  EXPECT_DOUBLE_EQ(fam.levels.back(), 1.1);
  for (const auto& phi : fam.phis) {
    EXPECT_NEAR(phi.theta(spec.T), 0.0, 1e-14) << phi.label;
    for (double x : {phi.support_lo[0] - 1e-9, phi.support_hi[0] + 1e-9}) EXPECT_EQ(phi.psi({x, 0.0}), 0.0);
    EXPECT_LT(phi.support_lo[0], phi.support_hi[0]);
  }
}

// Above the data range every positive-part term vanishes identically.
TEST(EntropyResidual, LevelsAboveTheRangeGiveZeroForThePlusSign) {
  const ProblemSpec spec = problem_preset("stefan_riemann");
  const SchemeConfig cfg = config(1.0 / 64);
  const StencilWeights st = build_scheme_stencil(measure_preset("fractional_trunc"), cfg);
  const Trajectory tr = solve(spec, st, cfg);
  TestFunctionFamily fam = default_test_family(spec, tr.range);
  fam.levels = {tr.range.hi + 0.1};
  const EntropyResidualReport r = entropy_residual(tr, spec, st, fam, {1.0 / 16});
  std::size_t plus = 0;
  for (const auto& t : r.terms)
    if (t.sign == EntropySign::Plus && t.admissible) {
      ++plus;
      EXPECT_EQ(t.residual, 0.0);
    }
  EXPECT_GT(plus, 0u);
}

TEST(EntropyResidual, ConstantStateIsNearlyExact) {
  const ProblemSpec spec = problem_preset("constant");
  const SchemeConfig cfg = config(1.0 / 64);
  const StencilWeights st = build_scheme_stencil(measure_preset("fractional_trunc"), cfg);
  const Trajectory tr = solve(spec, st, cfg);
  const TestFunctionFamily fam = default_test_family(spec, {0.5, 1.5});
  const EntropyResidualReport r = entropy_residual(tr, spec, st, fam, {1.0 / 16});
  EXPECT_GT(r.admissible, 0u);
  for (const auto& t : r.terms)
    if (t.admissible) EXPECT_LE(std::abs(t.residual), 2.0 * tr.dt) << t.phi << " k=" << t.k;
}

TEST(EntropyResidual, RadiusBelowTheSplitIsRejected) {
  const ProblemSpec spec = problem_preset("stefan_riemann");
  const SchemeConfig cfg = config(1.0 / 64);
  const StencilWeights st = build_scheme_stencil(measure_preset("fractional_trunc"), cfg);
  const Trajectory tr = solve(spec, st, cfg);
  try {
    entropy_residual(tr, spec, st, default_test_family(spec, tr.range), {cfg.dx / 4});
    ADD_FAILURE() << "expected an error";
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == Errc::BadRadii || e.code() == Errc::InvalidArgument) << e.what();
  }
}

TEST(EntropyRefinement, HyperbolicRiemannProblemPasses) {
  SchemeConfig cfg;
  cfg.Z = 0.25;
  const EntropySweep s = entropy_refinement(problem_preset("burgers_riemann"), measure_preset("none"), cfg, 1.0 / 64);
  EXPECT_TRUE(s.pass) << s.worst_margin;
  EXPECT_LT(s.h_fine, s.h_coarse);
  EXPECT_GE(s.constant, 0.0);
}

}  // namespace
}  // namespace nldp
