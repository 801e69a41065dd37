#pragma once

#include <cmath>
#include <functional>

namespace nldp::detail {

using Integrand = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (15-point) on a finite interval.
QuadResult integrate(const Integrand& f, double a, double b, double rel_tol = 1e-10);

/// Tanh-sinh on a finite interval; tolerates integrable endpoint singularities.
QuadResult integrate_singular(const Integrand& f, double a, double b, double rel_tol = 1e-10);

/// Exp-sinh on [a, infinity).
QuadResult integrate_to_infinity(const Integrand& f, double a, double rel_tol = 1e-10);

/// Fixed 20-point Gauss-Legendre rule.
double gauss_legendre(const Integrand& f, double a, double b);


/// Angular factor of the radial multiplier: integral over the unit sphere of
/// (1 - cos(t * theta_1)); equals 2(1 - cos t) for d = 1 and 2 pi (1 - J0(t)) for d = 2.
double angular_factor(int dim, double t);

/// Surface measure of the unit sphere S^{d-1}: 2 for d = 1, 2 pi for d = 2.
double sphere_area(int dim);

/// Integral of angular_factor(d, t) t^{-1-alpha} over (0, T].
double fractional_head(int dim, double alpha, double T);

/// Integral of angular_factor(d, t) t^{-1-alpha} over [T, infinity).
double fractional_tail(int dim, double alpha, double T);

/// Integral of angular_factor(d, t) t^{-1-alpha} over (0, infinity); equals 1 / C_{d,alpha}.
double fractional_full(int dim, double alpha);

/// 1 - cos(x) without cancellation for small x.
inline double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

}  // namespace nldp::detail
