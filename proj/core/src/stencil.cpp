#include "nldp/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "leaf_ops.hpp"
#include "nldp/error.hpp"
#include "quadrature.hpp"

namespace nldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_unit_axis(const Offset& j, int dim) {
  if (dim == 1) return std::abs(j[0]) == 1;
  return (std::abs(j[0]) == 1 && j[1] == 0) || (j[0] == 0 && std::abs(j[1]) == 1);
}

double offset_length(const Offset& j, int dim, double dx) {
  return dim == 1 ? std::abs(j[0]) * dx : std::hypot(double(j[0]), double(j[1])) * dx;
}

// Ray from the origin at angle th meets the box in [t_in, t_out]; empty when t_in >= t_out.
std::pair<double, double> ray_box(double th, double x0, double x1, double y0, double y1) {
  double lo = 0.0, hi = kInf;
  const double d[2] = {std::cos(th), std::sin(th)};
  const double b0[2] = {x0, y0}, b1[2] = {x1, y1};
  for (int a = 0; a < 2; ++a) {
    if (std::abs(d[a]) < 1e-300) {
      if (b0[a] > 0.0 || b1[a] < 0.0) return {1.0, 0.0};
      continue;
    }
    double t1 = b0[a] / d[a], t2 = b1[a] / d[a];
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
  }
  return {lo, hi};
}

// Mass of a continuous isotropic component on box intersected with {r <= |z| <= Z},
// by polar integration: closed-form radial part, Gauss-Legendre in angle on smooth pieces.
double cell_mass_2d(const detail::Component& c, double x0, double x1, double y0, double y1, double r, double Z) {
  const double corners[4][2] = {{x0, y0}, {x1, y0}, {x0, y1}, {x1, y1}};
  double th_lo = kInf, th_hi = -kInf, rmin2 = kInf, rmax2 = 0.0;
  for (const auto& p : corners) {
    const double th = std::atan2(p[1], p[0]);
    th_lo = std::min(th_lo, th);
    th_hi = std::max(th_hi, th);
    rmax2 = std::max(rmax2, p[0] * p[0] + p[1] * p[1]);
  }
  const double cx = std::clamp(0.0, x0, x1), cy = std::clamp(0.0, y0, y1);
  rmin2 = cx * cx + cy * cy;
  if (std::sqrt(rmax2) < r || std::sqrt(rmin2) > Z) return 0.0;

  std::vector<double> cuts{th_lo, th_hi};
  for (const auto& p : corners) cuts.push_back(std::atan2(p[1], p[0]));
  for (double R : {r, Z}) {
    for (double xc : {x0, x1}) {
      if (std::abs(xc) > R) continue;
      const double h = std::sqrt(R * R - xc * xc);
      for (double y : {h, -h})
        if (y >= y0 && y <= y1) cuts.push_back(std::atan2(y, xc));
    }
    for (double yc : {y0, y1}) {
      if (std::abs(yc) > R) continue;
      const double w = std::sqrt(R * R - yc * yc);
      for (double x : {w, -w})
        if (x >= x0 && x <= x1) cuts.push_back(std::atan2(yc, x));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  auto radial = [&](double th) {
    auto [a, b] = ray_box(th, x0, x1, y0, y1);
    a = std::max(a, r);
    b = std::min(b, Z);
    return b > a ? detail::component_radial_mass(c, a, b) : 0.0;
  };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = std::max(cuts[i], th_lo), b = std::min(cuts[i + 1], th_hi);
    if (b > a) sum += detail::gauss_legendre(radial, a, b);
  }
  return sum;
}

std::map<Offset, double> raw_weights_1d(const std::vector<detail::Component>& comps, double dx, double r, double Z, int J) {
  std::map<Offset, double> w;
  const double z_closed = std::nextafter(Z, kInf);
  for (int j = 1; j <= J; ++j) {
    const double a = std::max((j - 0.5) * dx, r);
    const double b = std::min((j + 0.5) * dx, z_closed);
    if (!(b > a)) continue;
    double m = 0.0;
    for (const auto& c : comps) m += 0.5 * detail::component_shell_mass(c, a, b);
    if (m > 0.0) {
      w[{j, 0}] = m;
      w[{-j, 0}] = m;
    }
  }
  return w;
}

std::map<Offset, double> raw_weights_2d(const std::vector<detail::Component>& comps, double dx, double r, double Z, int J) {
  std::map<Offset, double> w;
  auto cell_of = [dx](double x) { return static_cast<int>(std::floor(x / dx + 0.5)); };
  for (const auto& c : comps) {
    if (detail::is_discrete(c)) {
      const auto* k = std::get_if<const AtomicSymmetric*>(&c.leaf);
      require(k != nullptr, Errc::InvalidArgument, "dyadic measures are one-dimensional");
      for (const auto& atom : (*k)->atoms) {
        const double rho = norm(atom.z, 2);
        if (rho < std::max(r, c.r_min) || rho > Z) continue;
        if (!(*k)->mirror_implied && !(atom.z[0] > 0.0 || (atom.z[0] == 0.0 && atom.z[1] > 0.0))) continue;
        const Offset j{cell_of(atom.z[0]), cell_of(atom.z[1])};
        const double wt = c.scale * atom.weight;
        w[j] += wt;
        w[{-j[0], -j[1]}] += wt;
      }
      continue;
    }
    // isotropic: compute the closed quadrant and reflect
    for (int i = 0; i <= J; ++i) {
      for (int j = 0; j <= J; ++j) {
        if (i == 0 && j == 0) continue;
        const double m = cell_mass_2d(c, (i - 0.5) * dx, (i + 0.5) * dx, (j - 0.5) * dx, (j + 0.5) * dx, r, Z);
        if (m <= 0.0) continue;
        std::map<Offset, bool> seen;
        for (int si : {1, -1})
          for (int sj : {1, -1}) {
            const Offset o{si * i, sj * j};
            if (seen.emplace(o, true).second) w[o] += m;
          }
      }
    }
  }
  return w;
}

}  // namespace

int StencilWeights::reach() const {
  int R = 0;
  for (const auto& e : entries) R = std::max({R, std::abs(e.offset[0]), std::abs(e.offset[1])});
  return R;
}

double StencilWeights::weight(const Offset& j) const {
  for (const auto& e : entries)
    if (e.offset == j) return e.weight;
  return 0.0;
}

double StencilWeights::raw_weight(const Offset& j) const {
  const double w = weight(j);
  return is_unit_axis(j, dim) ? std::max(0.0, w - correction) : w;
}

StencilWeights build_stencil(const LevyMeasure& mu, double dx, double r, double Z) {
  if (!(dx > 0.0 && r >= dx * (1.0 - 1e-12) && Z >= r)) fail(Errc::BadRadii, "need 0 < dx <= r <= Z");
  const int dim = mu.dim();
  const auto comps = detail::flatten(mu);
  StencilWeights s;
  s.dim = dim;
  s.dx = dx;
  s.r = r;
  s.Z = Z;
  const int J = static_cast<int>(std::floor(Z / dx + 0.5));
  auto raw = dim == 1 ? raw_weights_1d(comps, dx, r, Z, J) : raw_weights_2d(comps, dx, r, Z, J);

  for (const auto& c : comps) {
    s.sigma2 += detail::component_shell_moment2(c, 0.0, r);
    s.tail += detail::component_shell_mass(c, std::nextafter(Z, kInf), kInf);
  }
  require(std::isfinite(s.sigma2) && std::isfinite(s.tail), Errc::DivergentLevyMoment, "inner moment or tail mass diverges");
  s.correction = s.sigma2 / (2.0 * dim * dx * dx);
  if (s.correction > 0.0) {
    for (int a = 0; a < dim; ++a) {
      Offset e{0, 0};
      e[a] = 1;
      raw[e] += s.correction;
      e[a] = -1;
      raw[e] += s.correction;
    }
  }
  for (const auto& [j, w] : raw) {
    if (w <= 0.0) continue;
    s.entries.push_back({j, w});
  }
  // summation over the sorted map keeps the order fixed
  for (const auto& e : s.entries) s.weight_sum += e.weight;
  return s;
}

StencilSplit split_stencil(const StencilWeights& s, double rho) {
  StencilSplit out{s, s};
  out.inner.entries.clear();
  out.outer.entries.clear();
  out.inner.tail = 0.0;
  out.inner.weight_sum = out.outer.weight_sum = 0.0;
  out.outer.sigma2 = out.outer.correction = 0.0;
  for (const auto& e : s.entries) {
    const bool nn = is_unit_axis(e.offset, s.dim);
    const double corr = nn ? std::min(s.correction, e.weight) : 0.0;
    const double raw = e.weight - corr;
    const bool inner = offset_length(e.offset, s.dim, s.dx) < rho * (1.0 - 1e-12);
    const double wi = corr + (inner ? raw : 0.0);
    const double wo = inner ? 0.0 : raw;
    if (wi > 0.0) out.inner.entries.push_back({e.offset, wi});
    if (wo > 0.0) out.outer.entries.push_back({e.offset, wo});
  }
  for (const auto& e : out.inner.entries) out.inner.weight_sum += e.weight;
  for (const auto& e : out.outer.entries) out.outer.weight_sum += e.weight;
  return out;
}

StencilWeights without_tail(const StencilWeights& s) {
  StencilWeights t = s;
  t.tail = 0.0;
  return t;
}

StencilKernel::StencilKernel(const StencilWeights& s, const Grid& g) : grid_(g), reach_(s.reach()), tail_(s.tail) {
  require(s.dim == g.dim, Errc::ShapeMismatch, "stencil and grid dimensions differ");
  for (const auto& e : s.entries) {
    // keep the lexicographically positive half; pairs are applied together
    if (e.offset[1] < 0 || (e.offset[1] == 0 && e.offset[0] < 0)) continue;
    half_offsets_.push_back(static_cast<std::ptrdiff_t>(e.offset[0]) + static_cast<std::ptrdiff_t>(e.offset[1]) * g.n[0]);
    half_weights_.push_back(e.weight);
  }
}

bool StencilKernel::fits(std::size_t k) const {
  const auto c = grid_.ij(k);
  if (c[0] - reach_ < 0 || c[0] + reach_ >= grid_.n[0]) return false;
  if (grid_.dim == 2 && (c[1] - reach_ < 0 || c[1] + reach_ >= grid_.n[1])) return false;
  return true;
}

double StencilKernel::apply(const double* v, std::size_t k, double far_value) const {
  const double vk = v[k];
  const double* p = v + k;
  double sum = 0.0;
  for (std::size_t q = 0; q < half_offsets_.size(); ++q) {
    const std::ptrdiff_t o = half_offsets_[q];
    sum += half_weights_[q] * ((p[o] - vk) + (p[-o] - vk));
  }
  return sum + tail_ * (far_value - vk);
}

Field apply_stencil(const Field& v, const StencilWeights& s, const PointFn& exterior, double far_value,
                    const std::vector<std::uint8_t>* where) {
  const Grid& g = v.grid;
  require(s.dim == g.dim, Errc::ShapeMismatch, "stencil and field dimensions differ");
  require(!where || where->size() == g.size(), Errc::ShapeMismatch, "mask size does not match the field");
  StencilKernel kernel(s, g);
  Field out(g, 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (where && !(*where)[k]) continue;
    if (kernel.fits(k)) {
      out[k] = kernel.apply(v.v.data(), k, far_value);
      continue;
    }
    const auto c = g.ij(k);
    const double vk = v[k];
    double sum = 0.0;
    for (const auto& e : s.entries) {
      const int i = c[0] + e.offset[0], j = c[1] + e.offset[1];
      double val;
      if (g.contains(i, j)) {
        val = v[g.flat(i, j)];
      } else {
        if (!exterior) fail(Errc::HaloTooSmall, "stencil shift leaves the stored halo and no exterior reader is set");
        val = exterior(g.center(i, j));
      }
      sum += e.weight * (val - vk);
    }
    out[k] = sum + s.tail * (far_value - vk);
  }
  return out;
}

double apply_stencil_at(const PointFn& fn, const Point& x, const StencilWeights& s, double far_value) {
  const double fx = fn(x);
  double sum = 0.0;
  for (const auto& e : s.entries) {
    const Point y{x[0] + e.offset[0] * s.dx, x[1] + e.offset[1] * s.dx};
    sum += e.weight * (fn(y) - fx);
  }
  return sum + s.tail * (far_value - fx);
}

double bilinear_energy(const Field& phi, const Field& psi, const StencilWeights& s) {
  const Grid& g = phi.grid;
  if (!(g == psi.grid) || phi.size() != psi.size()) fail(Errc::ShapeMismatch, "fields live on different grids");
  require(s.dim == g.dim, Errc::ShapeMismatch, "stencil and field dimensions differ");
  const int R = s.reach();
  const int ny_lo = g.dim == 2 ? -R : 0, ny_hi = g.dim == 2 ? g.n[1] + R : 1;
  auto read = [&](const Field& f, int i, int j) { return g.contains(i, j) ? f[g.flat(i, j)] : 0.0; };
  double total = 0.0;
  for (int j = ny_lo; j < ny_hi; ++j) {
    for (int i = -R; i < g.n[0] + R; ++i) {
      const double p0 = read(phi, i, j), q0 = read(psi, i, j);
      double cell = 0.0;
      for (const auto& e : s.entries) {
        const double dp = read(phi, i + e.offset[0], j + e.offset[1]) - p0;
        cell += 0.5 * e.weight * dp * (read(psi, i + e.offset[0], j + e.offset[1]) - q0);
      }
      total += cell + s.tail * p0 * q0;
    }
  }
  return total * g.cell_volume();
}

void write_stencil_csv(std::ostream& os, const StencilWeights& s) {
  os << "offset,weight\n";
  os.precision(17);
  for (const auto& e : s.entries) {
    if (s.dim == 1) os << e.offset[0];
    else os << e.offset[0] << ';' << e.offset[1];
    os << ',' << e.weight << '\n';
  }
}

}  // namespace nldp
