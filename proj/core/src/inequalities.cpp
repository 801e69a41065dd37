#include "nldp/inequalities.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <ostream>

#include "nldp/error.hpp"
#include "nldp/multiplier.hpp"

namespace nldp {

namespace {

constexpr double kPi = std::numbers::pi;

void record(InequalityVerdict& v, double slack, double tol) {
  ++v.trials;
  if (v.trials == 1 || slack < v.worst_slack) v.worst_slack = slack;
  if (slack < -tol) ++v.violations;
}

}  // namespace

std::vector<double> discrete_mollifier(int radius_cells) {
  require(radius_cells >= 1, Errc::InvalidArgument, "mollifier radius must be >= 1 cell");
  std::vector<double> w(2 * static_cast<std::size_t>(radius_cells) + 1);
  double sum = 0.0;
  for (int j = -radius_cells; j <= radius_cells; ++j) {
    const double c = std::cos(0.5 * kPi * j / (radius_cells + 1.0));
    w[static_cast<std::size_t>(j + radius_cells)] = c * c;
    sum += c * c;
  }
  for (double& x : w) x /= sum;
  return w;
}

InequalityVerdict mollification_bound_check(const std::vector<double>& u, const DiffusionFn& b, int radius_cells) {
  InequalityVerdict v;
  const std::vector<double> rho = discrete_mollifier(radius_cells);
  if (u.empty()) {
    v.pass = true;
    return v;
  }
  const auto [mn, mx] = std::minmax_element(u.begin(), u.end());
  const double umax = std::max(std::abs(*mn), std::abs(*mx));
  const double L = b.b.lipschitz(*mn, *mx);
  const double C = 2.0 * L * umax;
  const int n = static_cast<int>(u.size());
  for (int i = radius_cells; i + radius_cells < n; ++i) {
    double mean = 0.0, spread = 0.0;
    const double bi = b(u[static_cast<std::size_t>(i)]);
    for (int j = -radius_cells; j <= radius_cells; ++j) {
      const double w = rho[static_cast<std::size_t>(j + radius_cells)];
      const double uj = u[static_cast<std::size_t>(i + j)];
      mean += w * uj;
      spread += w * std::abs(b(uj) - bi);
    }
    const double diff = b(mean) - bi;
    const double lhs = diff * diff, rhs = C * spread;
    // Rounding floor: a few ulps of the right-hand side plus the square of the
    // error in the computed mean.
    const double err = 16.0 * DBL_EPSILON * L * umax;
    record(v, rhs - lhs, 16.0 * DBL_EPSILON * rhs + err * err);
  }
  v.pass = v.violations == 0;
  return v;
}

InequalityVerdict mollification_random_trials(const DiffusionFn& b, double lo, double hi, int trials, std::uint64_t seed,
                                         int cells) {
  require(cells >= 3 && trials >= 0, Errc::InvalidArgument, "need at least three cells and nonnegative trials");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(lo, hi);
  std::uniform_int_distribution<int> R(1, std::max(1, cells / 4));
  InequalityVerdict total;
  total.worst_slack = INFINITY;
  std::vector<double> u(static_cast<std::size_t>(cells));
  for (int t = 0; t < trials; ++t) {
    for (double& x : u) x = U(rng);
    const InequalityVerdict v = mollification_bound_check(u, b, R(rng));
    total.trials += v.trials;
    total.violations += v.violations;
    if (v.trials > 0) total.worst_slack = std::min(total.worst_slack, v.worst_slack);
  }
  total.pass = total.violations == 0;
  return total;
}

double mean_bound_slack(const std::vector<double>& s, const std::vector<double>& w,
                        const std::function<double(double)>& h, double L, double R) {
  require(s.size() == w.size() && !s.empty(), Errc::InvalidArgument, "atoms and weights must match");
  double sbar = 0.0, hbar = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sbar += w[i] * s[i];
    hbar += w[i] * h(s[i]);
  }
  const double hs = h(sbar);
  return L * R * hbar - hs * hs;
}

InequalityVerdict mean_bound_check(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U01(0.0, 1.0);
  std::uniform_real_distribution<double> UR(0.1, 10.0);
  std::uniform_int_distribution<int> atoms(1, 32);
  InequalityVerdict v;
  constexpr int kPieces = 64;
  for (int t = 0; t < trials; ++t) {
    const double R = UR(rng), L = UR(rng);
    // h: piecewise linear on kPieces cells of [-R, R], slopes in [0, L] away from 0.
    std::vector<double> knots(kPieces + 1), vals(kPieces + 1);
    const int mid = kPieces / 2;
    for (int i = 0; i <= kPieces; ++i) knots[static_cast<std::size_t>(i)] = -R + 2.0 * R * i / kPieces;
    vals[mid] = 0.0;
    for (int i = mid + 1; i <= kPieces; ++i)
      vals[static_cast<std::size_t>(i)] = vals[static_cast<std::size_t>(i - 1)] + L * U01(rng) * (2.0 * R / kPieces);
    for (int i = mid - 1; i >= 0; --i)
      vals[static_cast<std::size_t>(i)] = vals[static_cast<std::size_t>(i + 1)] + L * U01(rng) * (2.0 * R / kPieces);
    auto h = [&](double s) {
      const double pos = (s + R) / (2.0 * R) * kPieces;
      const int i = std::clamp(static_cast<int>(std::floor(pos)), 0, kPieces - 1);
      const double f = pos - i;
      return vals[static_cast<std::size_t>(i)] * (1.0 - f) + vals[static_cast<std::size_t>(i + 1)] * f;
    };
    const int m = atoms(rng);
    std::vector<double> s(static_cast<std::size_t>(m)), w(static_cast<std::size_t>(m));
    double wsum = 0.0;
    for (int i = 0; i < m; ++i) {
      s[static_cast<std::size_t>(i)] = -R + 2.0 * R * U01(rng);
      w[static_cast<std::size_t>(i)] = U01(rng) + 1e-3;
      wsum += w[static_cast<std::size_t>(i)];
    }
    for (double& x : w) x /= wsum;
    double hbar = 0.0;
    for (int i = 0; i < m; ++i) hbar += w[static_cast<std::size_t>(i)] * h(s[static_cast<std::size_t>(i)]);
    const double slack = mean_bound_slack(s, w, h, L, R);
    record(v, slack, 16.0 * DBL_EPSILON * L * R * hbar + DBL_MIN);
  }
  v.pass = v.violations == 0;
  return v;
}

LevyMeasure random_atomic_measure(std::mt19937_64& rng, int max_atoms) {
  require(max_atoms >= 1, Errc::InvalidArgument, "need at least one atom");
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_real_distribution<double> pos(0.01, 2.0), weight(0.05, 1.0);
  const int n = count(rng);
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) atoms.push_back({{pos(rng), 0.0}, weight(rng)});
  return LevyMeasure::atomic(std::move(atoms), 1, true);
}

SandwichResult multiplier_sandwich(const LevyMeasure& finite_mu, double xi_max, int samples) {
  require(samples >= 1 && xi_max > 0.0, Errc::InvalidArgument, "sandwich sampling needs samples >= 1 and xi_max > 0");
  const MomentReport rep = validate_measure(finite_mu);
  require(rep.finite_mass(), Errc::InvalidArgument, "sandwich needs a finite measure");
  SandwichResult r;
  r.total_mass = rep.total_mass;
  const MultiplierEval ev(finite_mu);
  for (int i = 1; i <= samples; ++i) r.sup = std::max(r.sup, ev(xi_max * i / samples));
  return r;
}

GalleryReport counterexample_gallery(int budget) {
  GalleryReport g;
  auto add = [&](std::string measure, std::string quantity, double arg, double value, double bound, bool pass,
                 bool enforced = true) {
    g.rows.push_back({std::move(measure), std::move(quantity), arg, value, bound, pass, enforced});
  };

  const LevyMeasure a = LevyMeasure::dyadic_a();
  const MultiplierEval ma(a, budget);
  const double moment_a = validate_measure(a, budget).levy_moment;
  add("dyadic_a", "levy_moment", 0.0, moment_a, 1.0 / 3.0, std::abs(moment_a - 1.0 / 3.0) <= 1e-12);
  const double cap = 2.0 / 3.0 * kPi * kPi;
  for (int n = 1; n <= 20; ++n) {
    const double xi = kPi * std::ldexp(1.0, n);
    const double m = ma(xi);
    add("dyadic_a", "m(pi*2^n)<=2pi^2/3", xi, m, cap, m <= cap + 1e-10);
  }
  double best = 0.0, arg_best = 0.0;
  std::vector<double> along;
  for (int n = 1; n <= 40; ++n) {
    const double xi = 1.1 * std::ldexp(1.0, n);
    const double m = ma(xi);
    along.push_back(m);
    if (m > best) {
      best = m;
      arg_best = xi;
    }
  }
  // Growth evidence: block maxima over n in (0,10], (10,20], (20,30], (30,40] increase.
  double prev = 0.0;
  for (int blk = 0; blk < 4; ++blk) {
    const double mb = *std::max_element(along.begin() + blk * 10, along.begin() + blk * 10 + 10);
    add("dyadic_a", "block_max m(1.1*2^n)", 10.0 * (blk + 1), mb, prev, mb > prev);
    prev = mb;
  }
  add("dyadic_a", "sup m(1.1*2^n),n<=40 exceeds 1e3", arg_best, best, 1e3, best > 1e3, false);

  const LevyMeasure bm = LevyMeasure::dyadic_b();
  const MultiplierEval mbv(bm, budget);
  const double moment_b = validate_measure(bm, budget).levy_moment;
  add("dyadic_b", "levy_moment", 0.0, moment_b, 1.0, std::abs(moment_b - 1.0) <= 1e-12);
  for (int i = 0; i < 20; ++i) {
    const int n = i + 1;
    const double ratio = 1.0 + i / 19.0;
    const double xi = ratio * std::ldexp(1.0, n);
    const double m = mbv(xi);
    const double lower = std::ldexp(1.0, n) * (1.0 - std::cos(1.0));
    add("dyadic_b", "m(xi)>=2^n(1-cos1)", xi, m, lower, m >= lower);
  }
  for (int n = 1; n <= 12; ++n) {
    const LevyMeasure mu_n = bm.restricted(std::ldexp(1.0, -n));
    const MultiplierEval mn(mu_n, budget);
    const double xi = kPi * std::ldexp(1.0, n + 1);
    const double v = mn(xi);
    add("dyadic_b", "m_n(pi*2^(n+1))=0", xi, v, 0.0, std::abs(v) <= 1e-10);

    // Finite truncations: m_n <= 2 ||mu_n|| on samples, and m_n <= m_{n+1} <= m.
    const double mass = validate_measure(mu_n, budget).total_mass;
    const MultiplierEval mnext(bm.restricted(std::ldexp(1.0, -(n + 1))), budget);
    double sup = 0.0;
    bool monotone = true;
    for (int q = 1; q <= 400; ++q) {
      const double x = 0.37 * q * std::ldexp(1.0, n) / 40.0;
      const double v0 = mn(x), v1 = mnext(x), vfull = mbv(x);
      sup = std::max(sup, v0);
      const double tol = 1e-12 * std::max(1.0, vfull);
      monotone = monotone && v0 <= v1 + tol && v1 <= vfull + tol;
    }
    add("dyadic_b", "sup m_n<=2*mass", static_cast<double>(n), sup, 2.0 * mass, sup <= 2.0 * mass);
    add("dyadic_b", "m_n<=m_(n+1)<=m", static_cast<double>(n), monotone ? 1.0 : 0.0, 1.0, monotone);
  }
  g.pass = std::all_of(g.rows.begin(), g.rows.end(), [](const GalleryRow& r) { return !r.enforced || r.pass; });
  return g;
}

void write_gallery_csv(std::ostream& os, const GalleryReport& g) {
  os << "measure,quantity,argument,value,bound,pass,enforced\n";
  os.precision(17);
  for (const auto& r : g.rows)
    os << r.measure << ",\"" << r.quantity << "\"," << r.argument << ',' << r.value << ',' << r.bound << ','
       << (r.pass ? 1 : 0) << ',' << (r.enforced ? 1 : 0) << '\n';
}

}  // namespace nldp
