#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nldp/grid.hpp"

namespace nldp {

/// Series kinds (dyadic examples) are cut after this many terms unless a budget is given.
inline constexpr int kDefaultSeriesBudget = 60;

struct Atom {
  Point z{0.0, 0.0};
  double weight = 0.0;
};

/// c |z|^{-d-alpha} dz, alpha in (0, 2).
struct FractionalRadial {
  double alpha = 1.0;
  int dim = 1;
  double c = 1.0;
};

/// Finite list of atoms. With `mirror_implied` each entry stands for the pair
/// w (delta_z + delta_{-z}); otherwise the list must already contain every mirror.
struct AtomicSymmetric {
  int dim = 1;
  std::vector<Atom> atoms;
  bool mirror_implied = true;
};

/// g(|z|) dz with g >= 0 supported in |z| <= support.
struct RadialDensity {
  int dim = 1;
  std::function<double(double)> g;
  double support = 1.0;
  bool integrable_at_origin = true;  ///< declares whether g(rho) rho^{d-1} is integrable at 0
  std::string label = "density";
};

/// sum_k (delta_{2^-k} + delta_{-2^-k}) / 2, k >= 1.
struct DyadicA {};
/// sum_k 2^k (delta_{2^-k} + delta_{-2^-k}) / 2, k >= 1.
struct DyadicB {};

class LevyMeasure;

struct MeasureSum {
  std::vector<LevyMeasure> terms;
};

struct MeasureScaled {
  double factor = 1.0;
  std::shared_ptr<const LevyMeasure> inner;
};

/// Immutable symmetric Levy measure. A truncation radius r restricts the
/// measure to {|z| >= r}; atoms with |z| = r stay in the restriction.
class LevyMeasure {
 public:
  using Kind = std::variant<FractionalRadial, AtomicSymmetric, RadialDensity, DyadicA, DyadicB, MeasureSum, MeasureScaled>;

  explicit LevyMeasure(Kind kind, std::optional<double> truncation = std::nullopt);

  static LevyMeasure fractional(double alpha, int dim = 1, double c = 1.0);
  static LevyMeasure atomic(std::vector<Atom> atoms, int dim = 1, bool mirror_implied = true);
  static LevyMeasure single_atom(double z, double weight);
  static LevyMeasure radial_density(RadialDensity density);
  static LevyMeasure dyadic_a();
  static LevyMeasure dyadic_b();
  static LevyMeasure sum(std::vector<LevyMeasure> terms);
  static LevyMeasure scaled(double factor, const LevyMeasure& inner);
  static LevyMeasure zero(int dim = 1);

  const Kind& kind() const { return *kind_; }
  int dim() const;
  std::optional<double> truncation_hint() const { return truncation_; }

  /// Restriction to {|z| >= r}; nested restrictions keep the larger radius.
  LevyMeasure restricted(double r) const;

  std::string describe() const;

 private:
  std::shared_ptr<const Kind> kind_;
  std::optional<double> truncation_;
};

/// C_{d,alpha}: with c equal to this constant the multiplier is exactly |xi|^alpha.
double fractional_standard_c(int dim, double alpha);

struct MomentReport {
  double levy_moment = 0.0;  ///< integral of (|z|^2 ^ 1)
  double total_mass = 0.0;   ///< +inf when the kind diverges structurally
  bool finite_mass() const;
};

MomentReport validate_measure(const LevyMeasure& mu, int budget = kDefaultSeriesBudget);

/// mu({a <= |z| < b}); b may be +inf.
double shell_mass(const LevyMeasure& mu, double a, double b);
/// Integral of |z|^2 over {a <= |z| < b}.
double shell_second_moment(const LevyMeasure& mu, double a, double b);

struct Truncation {
  double sigma2 = 0.0;  ///< integral of |z|^2 over {|z| < r}
  LevyMeasure outer;    ///< restriction to {|z| >= r}
};

Truncation truncate(const LevyMeasure& mu, double r);

/// Integral of (|z|^2 ^ 1) against |mu1 - mu2|.
double weighted_tv_distance(const LevyMeasure& mu1, const LevyMeasure& mu2, int budget = kDefaultSeriesBudget);

}  // namespace nldp
