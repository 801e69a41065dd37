#pragma once

// Flattened view of a LevyMeasure: a nonnegative combination of leaf kinds,
// each restricted to {|z| >= r_min}. All linear queries go through this view.

#include <variant>
#include <vector>

#include "nldp/levy_measure.hpp"

namespace nldp::detail {

using Leaf = std::variant<const FractionalRadial*, const AtomicSymmetric*, const RadialDensity*, DyadicA, DyadicB>;

struct Component {
  double scale = 1.0;
  double r_min = 0.0;
  int dim = 1;
  Leaf leaf;
};

/// Pointers in the result alias nodes of `mu`; keep `mu` alive while using them.
std::vector<Component> flatten(const LevyMeasure& mu);

bool is_discrete(const Component& c);

/// mu_c({a <= |z| < b}) including the scale factor.
double component_shell_mass(const Component& c, double a, double b);
double component_shell_moment2(const Component& c, double a, double b);
/// Integral of (|z|^2 ^ 1) over the whole component.
double component_weighted_moment(const Component& c);

/// Every atom (mirrors explicit) of a discrete component, scale applied; dyadic kinds use `budget` terms.
std::vector<Atom> component_atoms(const Component& c, int budget);

/// Density g(rho) (scale applied) of a continuous isotropic component, zero below r_min.
double component_density(const Component& c, double rho);
/// Integral of g(rho) rho^{d-1} over [a, b] intersected with the support (scale applied).
double component_radial_mass(const Component& c, double a, double b);

/// m(xi) of one component.
double component_multiplier(const Component& c, const Point& xi, int budget, double rel_tol);

}  // namespace nldp::detail
