#include "quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

namespace nldp::detail {

namespace {

constexpr double kPi = std::numbers::pi;
// Beyond this argument the tail integrals use their asymptotic expansions.
constexpr double kAsymptoticStart = 64.0;

double head_series(int dim, double alpha, double T) {
  double sum = 0.0;
  double tpow = T * T;  // T^{2k}
  double denom = dim == 1 ? 2.0 : 4.0;  // (2k)! or 4^k (k!)^2 at k = 1
  for (int k = 1; k <= 40; ++k) {
    const double term = tpow / (denom * (2.0 * k - alpha));
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18 * std::abs(sum)) break;
    tpow *= T * T;
    denom *= dim == 1 ? (2.0 * k + 1.0) * (2.0 * k + 2.0) : 4.0 * (k + 1.0) * (k + 1.0);
  }
  const double scale = dim == 1 ? 2.0 : 2.0 * kPi;
  return scale * sum * std::pow(T, -alpha);
}

double head_direct(int dim, double alpha, double T) {
  if (T <= 1.0) return head_series(dim, alpha, T);
  double sum = head_series(dim, alpha, 1.0);
  auto f = [dim, alpha](double t) { return angular_factor(dim, t) * std::pow(t, -1.0 - alpha); };
  double a = 1.0;
  while (a < T) {
    const double b = std::min(T, a + kPi);
    // Analytic on the piece with the t = 0 singularity at distance >= 1: a
    // fixed 20-point rule is at rounding level.
    sum += gauss_legendre(f, a, b);
    a = b;
  }
  return sum;
}

// Integral of cos(t) t^{-g} over [T, inf) by repeated integration by parts.
double cos_tail_asymptotic(double g, double T) {
  const double s = std::sin(T), c = std::cos(T);
  const double pattern[4] = {-s, c, s, -c};
  double coef = 1.0, sum = 0.0, last = INFINITY;
  for (int j = 0; j < 60; ++j) {
    const double term = coef * pattern[j % 4] * std::pow(T, -(g + j));
    if (std::abs(term) > last && j > 2) break;
    sum += term;
    last = std::abs(term);
    if (last < 1e-20 * std::pow(T, -g + 1.0)) break;
    coef *= (g + j);
  }
  return sum;
}

// Integral of J0(t) t^{-g} over [T, inf) via J0 = (t J1)'/t and J1 = -J0'.
double bessel_tail_asymptotic(double g, double T) {
  const double j0 = std::cyl_bessel_j(0.0, T), j1 = std::cyl_bessel_j(1.0, T);
  double sum = 0.0, factor = 1.0, last = INFINITY;
  for (int l = 0; l < 30; ++l) {
    const double gl = g + 2.0 * l;
    const double term = factor * (-j1 * std::pow(T, -gl) + (gl + 1.0) * j0 * std::pow(T, -gl - 1.0));
    if (std::abs(term) > last && l > 1) break;
    sum += term;
    last = std::abs(term);
    if (last < 1e-20 * std::pow(T, -g + 1.0)) break;
    factor *= -(gl + 1.0) * (gl + 1.0);
  }
  return sum;
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, double rel_tol) {
  QuadResult r;
  if (!(b > a)) return r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, rel_tol, &r.error);
  r.error *= std::abs(r.value);
  return r;
}

QuadResult integrate_singular(const Integrand& f, double a, double b, double rel_tol) {
  QuadResult r;
  if (!(b > a)) return r;
  boost::math::quadrature::tanh_sinh<double> ts;
  double l1 = 0.0;
  r.value = ts.integrate(f, a, b, rel_tol, &r.error, &l1);
  r.error *= std::abs(r.value);
  return r;
}

QuadResult integrate_to_infinity(const Integrand& f, double a, double rel_tol) {
  QuadResult r;
  boost::math::quadrature::exp_sinh<double> es;
  double l1 = 0.0;
  r.value = es.integrate([&](double t) { return f(a + t); }, 0.0, INFINITY, rel_tol, &r.error, &l1);
  r.error *= std::abs(r.value);
  return r;
}

double gauss_legendre(const Integrand& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

double angular_factor(int dim, double t) {
  if (dim == 1) return 2.0 * one_minus_cos(t);
  // 1 - J0 loses relative accuracy near 0; use the series there.
  if (std::abs(t) < 0.1) {
    const double q = 0.25 * t * t;
    return 2.0 * kPi * (q - q * q / 4.0 + q * q * q / 36.0 - q * q * q * q / 576.0);
  }
  return 2.0 * kPi * (1.0 - std::cyl_bessel_j(0.0, t));
}

double sphere_area(int dim) { return dim == 1 ? 2.0 : 2.0 * kPi; }

double fractional_full(int dim, double alpha) {
  const double d = dim;
  return std::pow(kPi, 0.5 * d) * std::tgamma(1.0 - 0.5 * alpha) /
         (alpha * std::pow(2.0, alpha - 1.0) * std::tgamma(0.5 * (d + alpha)));
}

double fractional_head(int dim, double alpha, double T) {
  if (T <= 0.0) return 0.0;
  if (T >= kAsymptoticStart) return fractional_full(dim, alpha) - fractional_tail(dim, alpha, T);
  return head_direct(dim, alpha, T);
}

double fractional_tail(int dim, double alpha, double T) {
  if (T <= 0.0) return fractional_full(dim, alpha);
  if (T < kAsymptoticStart) return fractional_full(dim, alpha) - head_direct(dim, alpha, T);
  const double beta = 1.0 + alpha;
  const double mean_part = std::pow(T, -alpha) / alpha;
  if (dim == 1) return 2.0 * (mean_part - cos_tail_asymptotic(beta, T));
  return 2.0 * kPi * (mean_part - bessel_tail_asymptotic(beta, T));
}

}  // namespace nldp::detail
