#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "nldp/levy_measure.hpp"
#include "nldp/problem.hpp"

namespace nldp {

struct InequalityVerdict {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;  ///< min of RHS - LHS
  bool pass = false;
};

/// Nonnegative raised-cosine weights on offsets -radius..radius with unit sum.
std::vector<double> discrete_mollifier(int radius_cells);

/// |b(u * rho)(x) - b(u(x))|^2 <= C (|b(u) - b(u(x))| * rho)(x) with
/// C = 2 L_b max|u|, at every cell whose mollifier window stays inside the slice.
InequalityVerdict mollification_bound_check(const std::vector<double>& u, const DiffusionFn& b, int radius_cells);

/// Random slices of `cells` values uniform in [lo, hi]; mollifier radius drawn in 1..cells/4.
InequalityVerdict mollification_random_trials(const DiffusionFn& b, double lo, double hi, int trials, std::uint64_t seed,
                                         int cells = 32);

/// h(mean s)^2 <= L R mean h for random discrete probability measures on
/// [-R, R] (at most 32 atoms) and random V-shaped L-Lipschitz h with h(0) = 0.
InequalityVerdict mean_bound_check(int trials, std::uint64_t seed);

/// One instance of the mean bound with explicit atoms, weights and h.
double mean_bound_slack(const std::vector<double>& s, const std::vector<double>& w,
                        const std::function<double(double)>& h, double L, double R);

/// Random symmetric atomic measure with 1..max_atoms mirrored pairs in 0 < |z| <= 2.
LevyMeasure random_atomic_measure(std::mt19937_64& rng, int max_atoms = 8);

struct SandwichResult {
  double sup = 0.0;         ///< sampled sup of m over xi in (0, xi_max]
  double total_mass = 0.0;
};

/// Samples m on `samples` equispaced xi in (0, xi_max].
SandwichResult multiplier_sandwich(const LevyMeasure& finite_mu, double xi_max, int samples);

struct GalleryRow {
  std::string measure;
  std::string quantity;
  double argument = 0.0;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  bool enforced = true;  ///< false for evidence rows that report a trend target
};

struct GalleryReport {
  std::vector<GalleryRow> rows;
  bool pass = false;  ///< all enforced rows pass
};

/// Table for the two dyadic counterexample measures (moments, multiplier
/// bounds, truncation zeros, finite-mass sandwich, monotone truncations).
GalleryReport counterexample_gallery(int budget = kDefaultSeriesBudget);

/// CSV header: measure,quantity,argument,value,bound,pass,enforced
void write_gallery_csv(std::ostream& os, const GalleryReport& g);

}  // namespace nldp
