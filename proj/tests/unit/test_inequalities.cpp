#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "nldp/inequalities.hpp"
#include "nldp/multiplier.hpp"

namespace nldp {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(MeanBound, HandExamples) {
  const auto abs = [](double s) { return std::abs(s); };
  // Symmetric pair: the mean is 0, so the left side vanishes and the slack is L R mean|s| = 1.
  EXPECT_DOUBLE_EQ(mean_bound_slack({1.0, -1.0}, {0.5, 0.5}, abs, 1.0, 1.0), 1.0);
  // Single atom at 1/2: 0.5 - 0.25.
  EXPECT_DOUBLE_EQ(mean_bound_slack({0.5}, {1.0}, abs, 1.0, 1.0), 0.25);
}

TEST(MeanBound, RandomTrialsNeverViolate) {
  const InequalityVerdict v = mean_bound_check(10000, 99);
  EXPECT_EQ(v.trials, 10000u);
  EXPECT_EQ(v.violations, 0u);
  EXPECT_TRUE(v.pass);
  EXPECT_GE(v.worst_slack, 0.0);
}

TEST(Mollifier, WeightsAreANonnegativeUnitPartition) {
  for (int r : {1, 3, 8}) {
    const std::vector<double> w = discrete_mollifier(r);
    ASSERT_EQ(w.size(), static_cast<std::size_t>(2 * r + 1));
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-15);
    for (std::size_t i = 0; i < w.size(); ++i) {
      EXPECT_GE(w[i], 0.0);
      EXPECT_EQ(w[i], w[w.size() - 1 - i]);
    }
  }
}

TEST(Mollification, ConstantSliceHasZeroSlackOnBothSides) {
  const InequalityVerdict v = mollification_bound_check(std::vector<double>(32, 0.7), DiffusionFn::identity(), 4);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.violations, 0u);
  EXPECT_NEAR(v.worst_slack, 0.0, 1e-15);
}

TEST(Mollification, RandomTrials) {
  for (const auto& [b, lo, hi] : {std::tuple{DiffusionFn::identity(), -1.0, 1.0}, std::tuple{DiffusionFn::stefan(0.5), 0.0, 1.0},
                                  std::tuple{DiffusionFn::power(2.0), -1.0, 1.0}}) {
    const InequalityVerdict v = mollification_random_trials(b, lo, hi, 2000, 5);
    EXPECT_TRUE(v.pass) << b.b.name();
    EXPECT_EQ(v.violations, 0u);
  }
}

TEST(Sandwich, RandomAtomicMeasuresStayBelowTwiceTheMass) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const SandwichResult s = multiplier_sandwich(random_atomic_measure(rng), 500.0, 20000);
    EXPECT_GT(s.total_mass, 0.0);
    EXPECT_LE(s.sup, 2.0 * s.total_mass * (1.0 + 1e-12));
  }
}

TEST(Gallery, DyadicAMultiplierAtTwoPi) {
  // Atoms at 2^-k: terms k = 1, 2 contribute 2 and 1; the rest 1 - cos(pi 2^-l), l >= 2.
  double expected = 3.0;
  for (int l = 2; l <= 60; ++l) expected += 1.0 - std::cos(kPi * std::ldexp(1.0, -l));
  const MultiplierEval m(LevyMeasure::dyadic_a());
  EXPECT_NEAR(m(2.0 * kPi), expected, 1e-12);
}

TEST(Gallery, DyadicBTruncationsVanishOnTheirLattice) {
  const LevyMeasure b = LevyMeasure::dyadic_b();
  for (int n = 1; n <= 12; ++n) {
    const MultiplierEval m(b.restricted(std::ldexp(1.0, -n)));
    EXPECT_NEAR(m(kPi * std::ldexp(1.0, n + 1)), 0.0, 1e-10) << n;
    EXPECT_GT(m(kPi * std::ldexp(1.0, n)), 0.0) << n;
  }
}

TEST(Gallery, EnforcedRowsPassAndTheGrowthTargetIsInformational) {
  const GalleryReport g = counterexample_gallery();
  EXPECT_TRUE(g.pass);
  std::size_t informational = 0;
  for (const auto& r : g.rows) {
    if (r.enforced) EXPECT_TRUE(r.pass) << r.measure << " " << r.quantity;
    else ++informational;
  }
  EXPECT_EQ(informational, 1u);
  std::ostringstream os;
  write_gallery_csv(os, g);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "measure,quantity,argument,value,bound,pass,enforced");
}

}  // namespace
}  // namespace nldp
