#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nldp/error.hpp"
#include "nldp/presets.hpp"
#include "nldp/problem.hpp"
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

std::vector<ScalarFn> all_kinds() {
  return {ScalarFn::zero(),      ScalarFn::linear(-0.7), ScalarFn::burgers(),   ScalarFn::identity(),
          ScalarFn::power(2.0),  ScalarFn::power(3.5),   ScalarFn::stefan(0.3),
          ScalarFn::table({{-1.0, 0.0, 0.5, 1.0}, {-2.0, 0.0, 0.0, 1.5}})};
}

TEST(ScalarFn, PrimitiveMatchesQuadrature) {
  for (const auto& g : all_kinds())
    for (double u : {-1.3, -0.4, 0.2, 0.9, 1.7}) {
      const double q = oracle::simpson_pieces([&](double s) { return g(s); }, {0.0, u / 3.0, 2.0 * u / 3.0, u}, 1e-13);
      EXPECT_NEAR(g.primitive(u), q, 1e-10) << g.name() << " u=" << u;
    }
}

TEST(ScalarFn, MonotoneSplitSumsToIncrement) {
  for (const auto& g : all_kinds())
    for (double u : {-1.5, -0.2, 0.0, 0.6, 2.0}) {
      EXPECT_NEAR(g.increasing_part(u) + g.decreasing_part(u), g(u) - g(0.0), 1e-13) << g.name();
      // Each part is monotone in the named direction.
      EXPECT_LE(g.increasing_part(u - 0.1), g.increasing_part(u) + 1e-15) << g.name();
      EXPECT_GE(g.decreasing_part(u - 0.1), g.decreasing_part(u) - 1e-15) << g.name();
    }
}

TEST(ScalarFn, LipschitzBoundsDifferenceQuotients) {
  std::mt19937_64 rng(17);
  for (const auto& g : all_kinds()) {
    const double lo = -1.2, hi = 1.4, L = g.lipschitz(lo, hi);
    std::uniform_real_distribution<double> U(lo, hi);
    for (int i = 0; i < 2000; ++i) {
      const double a = U(rng), b = U(rng);
      if (a == b) continue;
      EXPECT_LE(std::abs(g(a) - g(b)) / std::abs(a - b), L * (1.0 + 1e-12) + 1e-12) << g.name();
    }
  }
}

TEST(ScalarFn, ClosedForms) {
  EXPECT_DOUBLE_EQ(ScalarFn::burgers()(0.6), 0.18);
  EXPECT_DOUBLE_EQ(ScalarFn::power(2.0)(-0.5), -0.25);
  EXPECT_DOUBLE_EQ(ScalarFn::stefan(0.5)(0.4), 0.0);
  EXPECT_DOUBLE_EQ(ScalarFn::stefan(0.5)(0.9), 0.4);
  EXPECT_TRUE(ScalarFn::stefan(2.0).is_zero_on(0.0, 1.0));
  EXPECT_FALSE(ScalarFn::stefan(0.5).is_zero_on(0.0, 1.0));
  // Tables extend with the end slopes.
  const auto t = ScalarFn::table({{0.0, 1.0}, {0.0, 2.0}});
  EXPECT_DOUBLE_EQ(t(1.5), 3.0);
  EXPECT_DOUBLE_EQ(t(-1.0), -2.0);
}

TEST(Diffusion, EntropyHMatchesQuadrature) {
  for (const auto& b : {DiffusionFn::identity(), DiffusionFn::power(2.0), DiffusionFn::stefan(0.4)})
    for (double k : {-0.3, 0.2, 0.7})
      for (double u : {-0.8, 0.1, 0.9}) {
        const double q = oracle::simpson([&](double s) { return b(s) - b(k); }, k, u, 1e-13);
        EXPECT_NEAR(b.entropy_h(u, k), q, 1e-11);
        EXPECT_GE(b.entropy_h(u, k), -1e-15);
      }
}

TEST(Problem, PresetsAreNormalizedAndValid) {
  for (const auto& name : problem_preset_names()) {
    const ProblemSpec s = problem_preset(name);
    EXPECT_EQ(s.flux.g(0.0), 0.0) << name;
    EXPECT_EQ(s.diffusion(0.0), 0.0) << name;
    EXPECT_NO_THROW(validate_problem(s)) << name;
  }
  expect_errc([] { problem_preset("no_such_problem"); }, Errc::UnknownPreset);
}

TEST(Problem, ExtensionMismatchIsCaught) {
  ProblemSpec s = problem_preset("burgers_bump");
  s.extension = [](double, const Point& x) { return 0.01 * x[0]; };
  expect_errc([&] { validate_problem(s); }, Errc::ExtensionMismatch);
}

TEST(Problem, DecreasingDiffusionIsRejected) {
  ProblemSpec s = problem_preset("burgers_bump");
  s.diffusion = DiffusionFn::table({{-1.0, 0.0, 1.0}, {1.0, 0.0, -1.0}});
  expect_errc([&] { validate_problem(s); }, Errc::InvalidProblem);
}

TEST(Problem, ExtensionEvaluation) {
  const ProblemSpec s = problem_preset("sine_decay");
  EXPECT_DOUBLE_EQ(eval_extension(s, 0.3, {0.4, 0.0}), std::sin(0.4) * std::exp(-0.3));
  EXPECT_EQ(eval_extension(problem_preset("burgers_bump"), 0.2, {5.0, 0.0}), 0.0);
  expect_errc([&] { eval_extension(s, s.T + 0.1, {0.4, 0.0}); }, Errc::OutOfTimeRange);
  expect_errc([&] { eval_extension(s, -0.1, {0.4, 0.0}); }, Errc::OutOfTimeRange);
}

TEST(Discretize, UnitInsideZeroOutside) {
  const ProblemSpec s = problem_preset("unit_in_zero_out");
  const Discretization d = discretize(s, 1.0 / 16, 3);
  EXPECT_EQ(d.interior_cells.size(), 16u);
  EXPECT_EQ(d.exterior_cells.size(), 6u);
  for (std::size_t k : d.interior_cells) EXPECT_EQ(d.u0[k], 1.0);
  for (std::size_t k : d.exterior_cells) EXPECT_EQ(d.u0[k], 0.0);
  EXPECT_EQ(d.range.lo, 0.0);
  EXPECT_EQ(d.range.hi, 1.0);
}

TEST(Discretize, RiemannRangeIsTheStepLevels) {
  const Discretization d = discretize(problem_preset("burgers_riemann"), 1.0 / 32, 2);
  EXPECT_EQ(d.range.lo, 0.0);
  EXPECT_EQ(d.range.hi, 1.0);
  EXPECT_DOUBLE_EQ(d.lip_f, 1.0);
  EXPECT_EQ(d.lip_b, 0.0);
}

TEST(Discretize, BallAreaWithinTwoPercent) {
  const double dx = 1.0 / 64;
  const Discretization d = discretize(problem_preset("ball2d"), dx, 1);
  const double expected = std::numbers::pi * 0.4 * 0.4 / (dx * dx);
  EXPECT_NEAR(static_cast<double>(d.interior_cells.size()), expected, 0.02 * expected);
  // Classification agrees with the signed distance.
  const ProblemSpec s = problem_preset("ball2d");
  for (std::size_t k = 0; k < d.grid.size(); ++k)
    EXPECT_EQ(d.interior[k] != 0, s.domain.signed_distance(d.grid.center(k)) < 0.0);
}

TEST(Discretize, Errors) {
  const ProblemSpec s = problem_preset("burgers_bump");
  expect_errc([&] { discretize(s, 0.1, 2, 3); }, Errc::HaloTooSmall);
  expect_errc([&] { discretize(s, 0.0, 2); }, Errc::DegenerateGrid);
  expect_errc([&] { discretize(s, 0.3, 2); }, Errc::InvalidArgument);
  ProblemSpec tiny = problem_preset("ball2d");
  tiny.domain = DomainMask::ball({0.5, 0.5}, 0.01).with_box({0.0, 0.0}, {1.0, 1.0});
  expect_errc([&] { discretize(tiny, 0.25, 1); }, Errc::EmptyInterior);
}

TEST(Domain, BoundaryNodesCarryTheSurfaceMeasure) {
  const auto ball = DomainMask::ball({0.0, 0.0}, 0.4);
  double perimeter = 0.0;
  for (const auto& n : ball.boundary_nodes(0.01)) perimeter += n.weight;
  EXPECT_NEAR(perimeter, 2.0 * std::numbers::pi * 0.4, 1e-9);
  const auto interval = DomainMask::interval(0.0, 1.0).boundary_nodes(0.1);
  ASSERT_EQ(interval.size(), 2u);
  EXPECT_EQ(interval[0].weight, 1.0);
  EXPECT_EQ(interval[0].normal[0], -1.0);
  EXPECT_EQ(interval[1].normal[0], 1.0);
}

TEST(Smoothstep, EndpointsAndDerivative) {
  EXPECT_EQ(smoothstep5(-1.0), 0.0);
  EXPECT_EQ(smoothstep5(2.0), 1.0);
  EXPECT_DOUBLE_EQ(smoothstep5(0.5), 0.5);
  for (double s : {0.1, 0.4, 0.8}) {
    const double h = 1e-6;
    EXPECT_NEAR(smoothstep5_derivative(s), (smoothstep5(s + h) - smoothstep5(s - h)) / (2 * h), 1e-8);
  }
}

}  // namespace
}  // namespace nldp
