#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "nldp/levy_measure.hpp"

namespace nldp {

/// Evaluates m(xi) = integral of (1 - cos(xi . z)) dmu(z). Values are cached per xi;
/// the cache is private to this object and guarded, so evaluation is thread safe.
class MultiplierEval {
 public:
  explicit MultiplierEval(LevyMeasure mu, int budget = kDefaultSeriesBudget, double rel_tol = 1e-8);
  ~MultiplierEval();
  MultiplierEval(const MultiplierEval&) = delete;
  MultiplierEval& operator=(const MultiplierEval&) = delete;

  const LevyMeasure& measure() const { return mu_; }
  int budget() const { return budget_; }
  double rel_tol() const { return rel_tol_; }

  double operator()(const Point& xi) const;
  double operator()(double xi) const { return (*this)(Point{xi, 0.0}); }

  std::size_t cache_size() const;

 private:
  struct Components;
  LevyMeasure mu_;
  int budget_;
  double rel_tol_;
  std::unique_ptr<Components> comps_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<double, double>, double> cache_;
};

double multiplier(const MultiplierEval& ev, const Point& xi);
double multiplier(const MultiplierEval& ev, double xi);

/// Sampling of the annulus R <= |xi| <= r_max: `n_radial` radii (geometric when
/// `geometric`), `n_angular` directions in d = 2, plus any explicit radii.
struct XiSampling {
  double r_max = 0.0;
  int n_radial = 0;
  int n_angular = 16;
  bool geometric = false;
  std::vector<double> extra_radii;
};

/// Sampled minimum of m over the annulus; an upper bound on inf_{|xi| >= R} m.
struct InfEstimate {
  double value = 0.0;
  double argmin = 0.0;
  std::size_t samples = 0;
};

InfEstimate multiplier_inf_estimate(const MultiplierEval& ev, double R, const XiSampling& grid);

/// CSV with header `xi,m` along the first axis.
void write_multiplier_csv(std::ostream& os, const MultiplierEval& ev, const std::vector<double>& xi);

}  // namespace nldp
