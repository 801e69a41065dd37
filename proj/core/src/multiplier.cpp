#include "nldp/multiplier.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "leaf_ops.hpp"
#include "nldp/error.hpp"
#include "quadrature.hpp"

namespace nldp {

namespace detail {

namespace {

double atomic_multiplier(const AtomicSymmetric& k, double r_min, const Point& xi) {
  const double mult = k.mirror_implied ? 2.0 : 1.0;
  double sum = 0.0;
  for (const auto& a : k.atoms) {
    if (norm(a.z, k.dim) < r_min) continue;
    sum += (mult * a.weight) * one_minus_cos(dot(xi, a.z, k.dim));
  }
  return sum;
}

double dyadic_multiplier(bool kind_b, double r_min, double xi, int budget, double rel_tol) {
  double sum = 0.0;
  for (int k = 1; k <= budget; ++k) {
    const double z = std::ldexp(1.0, -k);
    if (z < r_min) return sum;
    const double w = kind_b ? std::ldexp(1.0, k) : 1.0;
    sum += w * one_minus_cos(xi * z);
  }
  // remaining terms obey 1 - cos(s) <= s^2 / 2
  const double tail = kind_b ? 0.5 * xi * xi * std::ldexp(1.0, -budget) : xi * xi * std::ldexp(1.0, -2 * budget) / 6.0;
  const double r_budget = std::ldexp(1.0, -budget);
  if (r_min <= r_budget && tail > rel_tol * sum + 1e-300)
    fail(Errc::QuadratureNotConverged, "dyadic series budget too small for |xi| = " + std::to_string(std::abs(xi)));
  return sum;
}

double fractional_multiplier(const FractionalRadial& k, double r_min, double s) {
  if (s == 0.0) return 0.0;
  const double lead = k.c * std::pow(s, k.alpha);
  if (r_min <= 0.0) return lead * fractional_full(k.dim, k.alpha);
  return lead * fractional_tail(k.dim, k.alpha, s * r_min);
}

double density_multiplier(const RadialDensity& k, double r_min, double s, double rel_tol) {
  if (s == 0.0) return 0.0;
  const double hi = k.support;
  if (!(hi > r_min)) return 0.0;
  auto f = [&](double rho) { return angular_factor(k.dim, s * rho) * k.g(rho) * std::pow(rho, k.dim - 1); };
  const double piece = std::numbers::pi / s;
  constexpr int kMaxPieces = 200000;
  double a = r_min, sum = 0.0, err = 0.0;
  int pieces = 0;
  while (a < hi) {
    const double b = std::min(hi, a + piece);
    auto res = (a == r_min) ? integrate_singular(f, a, b, 1e-11) : integrate(f, a, b, 1e-11);
    sum += res.value;
    err += res.error;
    a = b;
    if (++pieces > kMaxPieces) fail(Errc::QuadratureNotConverged, "radial density quadrature exceeded its piece budget");
  }
  if (!std::isfinite(sum) || err > rel_tol * std::abs(sum) + 1e-14)
    fail(Errc::QuadratureNotConverged, "radial density multiplier quadrature error above tolerance");
  return sum;
}

}  // namespace

double component_multiplier(const Component& c, const Point& xi, int budget, double rel_tol) {
  const double s = norm(xi, c.dim);
  double v = 0.0;
  if (auto k = std::get_if<const FractionalRadial*>(&c.leaf)) v = fractional_multiplier(**k, c.r_min, s);
  else if (auto k = std::get_if<const AtomicSymmetric*>(&c.leaf)) v = atomic_multiplier(**k, c.r_min, xi);
  else if (auto k = std::get_if<const RadialDensity*>(&c.leaf)) v = density_multiplier(**k, c.r_min, s, rel_tol);
  else if (std::holds_alternative<DyadicA>(c.leaf)) v = dyadic_multiplier(false, c.r_min, xi[0], budget, rel_tol);
  else v = dyadic_multiplier(true, c.r_min, xi[0], budget, rel_tol);
  return c.scale * v;
}

}  // namespace detail

struct MultiplierEval::Components {
  std::vector<detail::Component> list;
};

MultiplierEval::MultiplierEval(LevyMeasure mu, int budget, double rel_tol)
    : mu_(std::move(mu)), budget_(budget), rel_tol_(rel_tol), comps_(std::make_unique<Components>()) {
  require(budget >= 1, Errc::InvalidArgument, "budget must be at least 1");
  comps_->list = detail::flatten(mu_);
}

MultiplierEval::~MultiplierEval() = default;

double MultiplierEval::operator()(const Point& xi) const {
  const auto key = std::make_pair(xi[0], mu_.dim() == 2 ? xi[1] : 0.0);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const Point x{key.first, key.second};
  double m = 0.0;
  for (const auto& c : comps_->list) m += detail::component_multiplier(c, x, budget_, rel_tol_);
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(key, m);
  return m;
}

std::size_t MultiplierEval::cache_size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

double multiplier(const MultiplierEval& ev, const Point& xi) { return ev(xi); }
double multiplier(const MultiplierEval& ev, double xi) { return ev(xi); }

InfEstimate multiplier_inf_estimate(const MultiplierEval& ev, double R, const XiSampling& grid) {
  require(R > 0.0, Errc::InvalidArgument, "R must be positive");
  std::vector<double> radii;
  if (grid.n_radial >= 1 && grid.r_max >= R) {
    for (int i = 0; i < grid.n_radial; ++i) {
      const double t = grid.n_radial == 1 ? 0.0 : static_cast<double>(i) / (grid.n_radial - 1);
      radii.push_back(grid.geometric ? R * std::pow(grid.r_max / R, t) : R + t * (grid.r_max - R));
    }
  }
  for (double r : grid.extra_radii)
    if (r >= R && r <= std::max(grid.r_max, R)) radii.push_back(r);
  if (radii.empty()) fail(Errc::EmptyGrid, "no sample radius inside the annulus");

  InfEstimate est{INFINITY, 0.0, 0};
  const int dirs = ev.measure().dim() == 2 ? std::max(1, grid.n_angular) : 1;
  for (double r : radii) {
    for (int a = 0; a < dirs; ++a) {
      const double th = std::numbers::pi * a / dirs;  // m is even, half circle suffices
      const Point xi = ev.measure().dim() == 2 ? Point{r * std::cos(th), r * std::sin(th)} : Point{r, 0.0};
      const double m = ev(xi);
      ++est.samples;
      if (m < est.value) {
        est.value = m;
        est.argmin = r;
      }
    }
  }
  return est;
}

void write_multiplier_csv(std::ostream& os, const MultiplierEval& ev, const std::vector<double>& xi) {
  os << "xi,m\n";
  os.precision(17);
  for (double x : xi) os << x << ',' << ev(x) << '\n';
}

}  // namespace nldp
