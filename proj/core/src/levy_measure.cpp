#include "nldp/levy_measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "leaf_ops.hpp"
#include "nldp/error.hpp"
#include "quadrature.hpp"

namespace nldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dim(int dim) { require(dim == 1 || dim == 2, Errc::InvalidArgument, "dimension must be 1 or 2"); }

}  // namespace

LevyMeasure::LevyMeasure(Kind kind, std::optional<double> truncation)
    : kind_(std::make_shared<const Kind>(std::move(kind))), truncation_(truncation) {}

LevyMeasure LevyMeasure::fractional(double alpha, int dim, double c) { return LevyMeasure(FractionalRadial{alpha, dim, c}); }

LevyMeasure LevyMeasure::atomic(std::vector<Atom> atoms, int dim, bool mirror_implied) {
  return LevyMeasure(AtomicSymmetric{dim, std::move(atoms), mirror_implied});
}

LevyMeasure LevyMeasure::single_atom(double z, double weight) { return atomic({Atom{{z, 0.0}, weight}}, 1, true); }

LevyMeasure LevyMeasure::radial_density(RadialDensity density) { return LevyMeasure(std::move(density)); }
LevyMeasure LevyMeasure::dyadic_a() { return LevyMeasure(DyadicA{}); }
LevyMeasure LevyMeasure::dyadic_b() { return LevyMeasure(DyadicB{}); }
LevyMeasure LevyMeasure::sum(std::vector<LevyMeasure> terms) { return LevyMeasure(MeasureSum{std::move(terms)}); }

LevyMeasure LevyMeasure::scaled(double factor, const LevyMeasure& inner) {
  return LevyMeasure(MeasureScaled{factor, std::make_shared<const LevyMeasure>(inner)});
}

LevyMeasure LevyMeasure::zero(int dim) { return atomic({}, dim, true); }

int LevyMeasure::dim() const {
  return std::visit(Overloaded{
                        [](const FractionalRadial& k) { return k.dim; },
                        [](const AtomicSymmetric& k) { return k.dim; },
                        [](const RadialDensity& k) { return k.dim; },
                        [](const DyadicA&) { return 1; },
                        [](const DyadicB&) { return 1; },
                        [](const MeasureSum& k) { return k.terms.empty() ? 1 : k.terms.front().dim(); },
                        [](const MeasureScaled& k) { return k.inner->dim(); },
                    },
                    *kind_);
}

LevyMeasure LevyMeasure::restricted(double r) const {
  require(r > 0.0 && std::isfinite(r), Errc::InvalidArgument, "restriction radius must be positive and finite");
  LevyMeasure out = *this;
  out.truncation_ = truncation_ ? std::max(*truncation_, r) : r;
  return out;
}

std::string LevyMeasure::describe() const {
  std::ostringstream os;
  os.precision(12);
  std::visit(Overloaded{
                 [&](const FractionalRadial& k) { os << "fractional(alpha=" << k.alpha << ",d=" << k.dim << ",c=" << k.c << ")"; },
                 [&](const AtomicSymmetric& k) { os << "atomic(n=" << k.atoms.size() << ",d=" << k.dim << ")"; },
                 [&](const RadialDensity& k) { os << "radial_density(" << k.label << ",d=" << k.dim << ")"; },
                 [&](const DyadicA&) { os << "dyadic_a"; },
                 [&](const DyadicB&) { os << "dyadic_b"; },
                 [&](const MeasureSum& k) {
                   os << "sum(";
                   for (std::size_t i = 0; i < k.terms.size(); ++i) os << (i ? "," : "") << k.terms[i].describe();
                   os << ")";
                 },
                 [&](const MeasureScaled& k) { os << k.factor << "*" << k.inner->describe(); },
             },
             *kind_);
  if (truncation_) os << "[|z|>=" << *truncation_ << "]";
  return os.str();
}

double fractional_standard_c(int dim, double alpha) { return 1.0 / detail::fractional_full(dim, alpha); }

bool MomentReport::finite_mass() const { return std::isfinite(total_mass); }

namespace detail {

namespace {

void flatten_into(const LevyMeasure& mu, double scale, double r_min, std::vector<Component>& out) {
  const double r = mu.truncation_hint() ? std::max(r_min, *mu.truncation_hint()) : r_min;
  std::visit(Overloaded{
                 [&](const FractionalRadial& k) { out.push_back({scale, r, k.dim, &k}); },
                 [&](const AtomicSymmetric& k) { out.push_back({scale, r, k.dim, &k}); },
                 [&](const RadialDensity& k) { out.push_back({scale, r, k.dim, &k}); },
                 [&](const DyadicA& k) { out.push_back({scale, r, 1, k}); },
                 [&](const DyadicB& k) { out.push_back({scale, r, 1, k}); },
                 [&](const MeasureSum& k) {
                   for (const auto& t : k.terms) flatten_into(t, scale, r, out);
                 },
                 [&](const MeasureScaled& k) { flatten_into(*k.inner, scale * k.factor, r, out); },
             },
             mu.kind());
}

// Mass carried by the mirrored pair at 2^{-k}.
double dyadic_pair_weight(bool kind_b, int k) { return kind_b ? std::ldexp(1.0, k) : 1.0; }

// Sum over k >= 1 with a <= 2^{-k} < b of pair_weight * 4^{-k p}, p in {0, 1}.
double dyadic_shell(bool kind_b, double a, double b, int p) {
  if (!(b > a)) return 0.0;
  int k = 1;
  while (std::ldexp(1.0, -k) >= b) ++k;
  if (a <= 0.0) {
    if (p == 0) return kInf;
    // geometric tail from k on: A gives 4^{-k} * 4/3, B gives 2^{-k} * 2
    return kind_b ? std::ldexp(2.0, -k) : std::ldexp(1.0, -2 * k) * 4.0 / 3.0;
  }
  double sum = 0.0;
  for (; std::ldexp(1.0, -k) >= a; ++k) {
    const double w = dyadic_pair_weight(kind_b, k);
    sum += p == 0 ? w : w * std::ldexp(1.0, -2 * k);
  }
  return sum;
}

double atomic_shell(const AtomicSymmetric& k, double a, double b, int p) {
  double sum = 0.0;
  const double mult = k.mirror_implied ? 2.0 : 1.0;
  for (const auto& atom : k.atoms) {
    const double rho = norm(atom.z, k.dim);
    if (rho >= a && rho < b) sum += mult * atom.weight * (p == 0 ? 1.0 : rho * rho);
  }
  return sum;
}

double fractional_shell(const FractionalRadial& k, double a, double b, int p) {
  const double s = sphere_area(k.dim) * k.c;
  if (p == 0) {
    if (a <= 0.0) return kInf;
    const double hi = std::isfinite(b) ? std::pow(b, -k.alpha) : 0.0;
    return s * (std::pow(a, -k.alpha) - hi) / k.alpha;
  }
  if (!std::isfinite(b)) return kInf;
  const double lo = a > 0.0 ? std::pow(a, 2.0 - k.alpha) : 0.0;
  return s * (std::pow(b, 2.0 - k.alpha) - lo) / (2.0 - k.alpha);
}

double density_shell(const RadialDensity& k, double a, double b, int p) {
  b = std::min(b, k.support);
  if (!(b > a)) return 0.0;
  if (a <= 0.0 && p == 0 && !k.integrable_at_origin) return kInf;
  const int pw = k.dim - 1 + 2 * p;
  auto f = [&](double rho) { return k.g(rho) * std::pow(rho, pw); };
  auto res = integrate_singular(f, a, b, 1e-10);
  return sphere_area(k.dim) * res.value;
}

double shell(const Component& c, double a, double b, int p) {
  a = std::max(a, c.r_min);
  if (!(b > a)) return 0.0;
  const double v = std::visit(Overloaded{
                                  [&](const FractionalRadial* k) { return fractional_shell(*k, a, b, p); },
                                  [&](const AtomicSymmetric* k) { return atomic_shell(*k, a, b, p); },
                                  [&](const RadialDensity* k) { return density_shell(*k, a, b, p); },
                                  [&](const DyadicA&) { return dyadic_shell(false, a, b, p); },
                                  [&](const DyadicB&) { return dyadic_shell(true, a, b, p); },
                              },
                              c.leaf);
  return c.scale * v;
}

}  // namespace

std::vector<Component> flatten(const LevyMeasure& mu) {
  std::vector<Component> out;
  flatten_into(mu, 1.0, 0.0, out);
  return out;
}

bool is_discrete(const Component& c) {
  return !std::holds_alternative<const FractionalRadial*>(c.leaf) && !std::holds_alternative<const RadialDensity*>(c.leaf);
}

double component_shell_mass(const Component& c, double a, double b) { return shell(c, a, b, 0); }
double component_shell_moment2(const Component& c, double a, double b) { return shell(c, a, b, 1); }

double component_weighted_moment(const Component& c) { return shell(c, 0.0, 1.0, 1) + shell(c, 1.0, kInf, 0); }

std::vector<Atom> component_atoms(const Component& c, int budget) {
  std::vector<Atom> out;
  auto push_pair = [&](Point z, double w) {
    if (norm(z, c.dim) < c.r_min) return;
    out.push_back({z, w * c.scale});
    out.push_back({{-z[0], -z[1]}, w * c.scale});
  };
  std::visit(Overloaded{
                 [&](const FractionalRadial*) {},
                 [&](const RadialDensity*) {},
                 [&](const AtomicSymmetric* k) {
                   for (const auto& a : k->atoms) {
                     if (k->mirror_implied) {
                       push_pair(a.z, a.weight);
                     } else if (norm(a.z, c.dim) >= c.r_min) {
                       out.push_back({a.z, a.weight * c.scale});
                     }
                   }
                 },
                 [&](const DyadicA&) {
                   for (int k = 1; k <= budget; ++k) push_pair({std::ldexp(1.0, -k), 0.0}, 0.5);
                 },
                 [&](const DyadicB&) {
                   for (int k = 1; k <= budget; ++k) push_pair({std::ldexp(1.0, -k), 0.0}, std::ldexp(0.5, k));
                 },
             },
             c.leaf);
  return out;
}

double component_density(const Component& c, double rho) {
  if (rho < c.r_min || rho <= 0.0) return 0.0;
  if (auto k = std::get_if<const FractionalRadial*>(&c.leaf)) return c.scale * (*k)->c * std::pow(rho, -(*k)->dim - (*k)->alpha);
  if (auto k = std::get_if<const RadialDensity*>(&c.leaf)) return rho <= (*k)->support ? c.scale * (*k)->g(rho) : 0.0;
  return 0.0;
}

double component_radial_mass(const Component& c, double a, double b) {
  a = std::max(a, c.r_min);
  if (auto k = std::get_if<const FractionalRadial*>(&c.leaf)) {
    if (!(b > a)) return 0.0;
    const double al = (*k)->alpha;
    return c.scale * (*k)->c * (std::pow(a, -al) - std::pow(b, -al)) / al;
  }
  if (auto k = std::get_if<const RadialDensity*>(&c.leaf)) {
    b = std::min(b, (*k)->support);
    if (!(b > a)) return 0.0;
    const int pw = (*k)->dim - 1;
    auto f = [&](double rho) { return (*k)->g(rho) * std::pow(rho, pw); };
    return c.scale * integrate(f, a, b, 1e-11).value;
  }
  return 0.0;
}

}  // namespace detail

namespace {

void validate_component(const detail::Component& c) {
  check_dim(c.dim);
  require(c.scale > 0.0 && std::isfinite(c.scale), Errc::InvalidArgument, "scale factors must be positive");
  std::visit(Overloaded{
                 [&](const FractionalRadial* k) {
                   if (!(k->alpha > 0.0 && k->alpha < 2.0))
                     fail(Errc::DivergentLevyMoment, "fractional order must lie in (0,2)");
                   require(k->c > 0.0, Errc::InvalidArgument, "fractional normalization must be positive");
                 },
                 [&](const AtomicSymmetric* k) {
                   for (const auto& a : k->atoms) {
                     if (norm(a.z, k->dim) == 0.0) fail(Errc::MassAtOrigin, "atom at the origin");
                     require(a.weight > 0.0, Errc::InvalidArgument, "atom weights must be positive");
                   }
                   if (!k->mirror_implied) {
                     for (const auto& a : k->atoms) {
                       const bool mirrored = std::any_of(k->atoms.begin(), k->atoms.end(), [&](const Atom& b) {
                         return std::abs(a.z[0] + b.z[0]) <= 1e-14 * (1.0 + std::abs(a.z[0])) &&
                                std::abs(a.z[1] + b.z[1]) <= 1e-14 * (1.0 + std::abs(a.z[1])) &&
                                std::abs(a.weight - b.weight) <= 1e-14 * a.weight;
                       });
                       if (!mirrored) fail(Errc::NonSymmetric, "atom without a mirror of equal weight");
                     }
                   }
                 },
                 [&](const RadialDensity* k) {
                   require(static_cast<bool>(k->g), Errc::InvalidArgument, "radial density without a function");
                   require(k->support > 0.0 && std::isfinite(k->support), Errc::InvalidArgument, "density support must be finite");
                 },
                 [](const DyadicA&) {},
                 [](const DyadicB&) {},
             },
             c.leaf);
}

}  // namespace

MomentReport validate_measure(const LevyMeasure& mu, int budget) {
  require(budget >= 1, Errc::InvalidArgument, "budget must be at least 1");
  const auto comps = detail::flatten(mu);
  MomentReport rep;
  for (const auto& c : comps) {
    if (c.dim != mu.dim()) fail(Errc::InvalidArgument, "sum of measures with different dimensions");
    validate_component(c);
    const double m = detail::component_weighted_moment(c);
    if (!std::isfinite(m)) fail(Errc::DivergentLevyMoment, "Levy moment does not converge for " + mu.describe());
    rep.levy_moment += m;
    rep.total_mass += detail::component_shell_mass(c, 0.0, kInf);
  }
  return rep;
}

double shell_mass(const LevyMeasure& mu, double a, double b) {
  double s = 0.0;
  for (const auto& c : detail::flatten(mu)) s += detail::component_shell_mass(c, a, b);
  return s;
}

double shell_second_moment(const LevyMeasure& mu, double a, double b) {
  double s = 0.0;
  for (const auto& c : detail::flatten(mu)) s += detail::component_shell_moment2(c, a, b);
  return s;
}

Truncation truncate(const LevyMeasure& mu, double r) {
  require(r > 0.0, Errc::InvalidArgument, "truncation radius must be positive");
  return Truncation{shell_second_moment(mu, 0.0, r), mu.restricted(r)};
}

namespace {

double weighted_atoms_distance(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.z < b.z; });
  double total = 0.0;
  std::size_t i = 0;
  while (i < atoms.size()) {
    const Point z = atoms[i].z;
    double w = 0.0;
    std::size_t j = i;
    for (; j < atoms.size(); ++j) {
      const double tol = 1e-13 * (1.0 + std::abs(z[0]) + std::abs(z[1]));
      if (std::abs(atoms[j].z[0] - z[0]) > tol || std::abs(atoms[j].z[1] - z[1]) > tol) break;
      w += atoms[j].weight;
    }
    const double rho2 = z[0] * z[0] + z[1] * z[1];
    total += std::abs(w) * std::min(rho2, 1.0);
    i = j;
  }
  return total;
}

// Continuous components sharing one radial profile differ only by a coefficient.
struct Shape {
  int kind = 0;  // 0 fractional, 1 density
  double alpha = 0.0;
  const RadialDensity* density = nullptr;
  bool operator==(const Shape&) const = default;
};

Shape shape_of(const detail::Component& c) {
  if (auto k = std::get_if<const FractionalRadial*>(&c.leaf)) return {0, (*k)->alpha, nullptr};
  return {1, 0.0, std::get<const RadialDensity*>(c.leaf)};
}

double shape_coefficient(const detail::Component& c) {
  if (auto k = std::get_if<const FractionalRadial*>(&c.leaf)) return c.scale * (*k)->c;
  return c.scale;
}

// Weighted moment of the unit-coefficient profile over [a, b).
double shape_weighted_shell(const detail::Component& c, double a, double b) {
  detail::Component unit = c;
  unit.r_min = 0.0;
  unit.scale = 1.0 / shape_coefficient(c) * c.scale;
  return detail::component_shell_moment2(unit, a, std::min(b, 1.0)) + detail::component_shell_mass(unit, std::max(a, 1.0), b);
}

double continuous_distance(const std::vector<std::pair<double, detail::Component>>& signed_comps, int dim) {
  if (signed_comps.empty()) return 0.0;
  std::vector<double> cuts{0.0, 1.0, kInf};
  for (const auto& [s, c] : signed_comps) {
    cuts.push_back(c.r_min);
    if (auto k = std::get_if<const RadialDensity*>(&c.leaf)) cuts.push_back((*k)->support);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    std::vector<std::pair<double, const detail::Component*>> active;
    for (const auto& [s, c] : signed_comps) {
      if (c.r_min > a) continue;
      if (auto k = std::get_if<const RadialDensity*>(&c.leaf); k && (*k)->support <= a) continue;
      active.push_back({s, &c});
    }
    if (active.empty()) continue;
    const Shape first = shape_of(*active.front().second);
    const bool same = std::all_of(active.begin(), active.end(), [&](const auto& p) { return shape_of(*p.second) == first; });
    if (same) {
      double coef = 0.0;
      for (const auto& [s, c] : active) coef += s * shape_coefficient(*c);
      if (coef != 0.0) total += std::abs(coef) * shape_weighted_shell(*active.front().second, a, b);
      continue;
    }
    auto f = [&](double rho) {
      double h = 0.0;
      for (const auto& [s, c] : active) {
        detail::Component u = *c;
        u.r_min = 0.0;
        h += s * detail::component_density(u, rho);
      }
      return std::abs(h) * std::min(rho * rho, 1.0) * std::pow(rho, dim - 1);
    };
    const double piece = std::isfinite(b) ? detail::integrate_singular(f, a, b, 1e-10).value
                                          : detail::integrate_to_infinity(f, a, 1e-10).value;
    total += detail::sphere_area(dim) * piece;
  }
  return total;
}

}  // namespace

double weighted_tv_distance(const LevyMeasure& mu1, const LevyMeasure& mu2, int budget) {
  if (mu1.dim() != mu2.dim()) fail(Errc::UnsupportedPair, "measures live in different dimensions");
  std::vector<Atom> atoms;
  std::vector<std::pair<double, detail::Component>> continuous;
  auto add = [&](const LevyMeasure& mu, double sign) {
    for (auto c : detail::flatten(mu)) {
      if (detail::is_discrete(c)) {
        for (auto a : detail::component_atoms(c, budget)) {
          a.weight *= sign;
          atoms.push_back(a);
        }
      } else {
        continuous.push_back({sign, c});
      }
    }
  };
  add(mu1, 1.0);
  add(mu2, -1.0);
  // discrete and absolutely continuous parts are mutually singular
  return weighted_atoms_distance(std::move(atoms)) + continuous_distance(continuous, mu1.dim());
}

}  // namespace nldp
