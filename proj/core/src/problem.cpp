#include "nldp/problem.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "nldp/error.hpp"

namespace nldp {

namespace {

int table_segment(const PiecewiseLinear& t, double u) {
  const int n = static_cast<int>(t.x.size());
  auto it = std::upper_bound(t.x.begin(), t.x.end(), u);
  int s = static_cast<int>(it - t.x.begin()) - 1;
  return std::clamp(s, 0, n - 2);
}

double table_slope(const PiecewiseLinear& t, int s) { return (t.y[s + 1] - t.y[s]) / (t.x[s + 1] - t.x[s]); }

double table_eval(const PiecewiseLinear& t, double u) {
  int s = table_segment(t, u);
  return t.y[s] + table_slope(t, s) * (u - t.x[s]);
}

// Sums `piece(lo, hi, segment)` over the maximal subintervals of [min(a,b), max(a,b)]
// on which the table is affine; the result is negated when b < a.
template <class Piece>
double table_integral(const PiecewiseLinear& t, double a, double b, Piece piece) {
  if (a == b) return 0.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  std::vector<double> cuts{lo};
  for (double x : t.x)
    if (x > lo && x < hi) cuts.push_back(x);
  cuts.push_back(hi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    total += piece(cuts[i], cuts[i + 1], table_segment(t, mid));
  }
  return b < a ? -total : total;
}

}  // namespace

ScalarFn ScalarFn::zero() { return {Kind::Zero, 0.0}; }
ScalarFn ScalarFn::linear(double c) {
  require(std::isfinite(c), Errc::InvalidArgument, "linear coefficient must be finite");
  return {Kind::Linear, c};
}
ScalarFn ScalarFn::burgers() { return {Kind::Burgers, 0.0}; }
ScalarFn ScalarFn::identity() { return {Kind::Identity, 0.0}; }
ScalarFn ScalarFn::power(double m) {
  require(std::isfinite(m) && m >= 1.0, Errc::InvalidArgument, "power exponent must be >= 1");
  return {Kind::Power, m};
}
ScalarFn ScalarFn::stefan(double level) {
  require(std::isfinite(level) && level >= 0.0, Errc::InvalidArgument, "stefan level must be >= 0");
  return {Kind::Stefan, level};
}
ScalarFn ScalarFn::table(PiecewiseLinear t) {
  require(t.x.size() >= 2 && t.x.size() == t.y.size(), Errc::InvalidArgument,
          "table needs at least two breakpoints and matching values");
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    require(std::isfinite(t.x[i]) && std::isfinite(t.y[i]), Errc::InvalidArgument, "table entries must be finite");
    if (i > 0) require(t.x[i] > t.x[i - 1], Errc::InvalidArgument, "table breakpoints must increase strictly");
  }
  ScalarFn f{Kind::Table, 0.0};
  f.table_ = std::move(t);
  return f;
}

std::string ScalarFn::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Zero: return "zero";
    case Kind::Linear: os << "linear(" << p_ << ")"; return os.str();
    case Kind::Burgers: return "burgers";
    case Kind::Identity: return "identity";
    case Kind::Power: os << "power(" << p_ << ")"; return os.str();
    case Kind::Stefan: os << "stefan(" << p_ << ")"; return os.str();
    case Kind::Table: os << "table(" << table_.x.size() << ")"; return os.str();
  }
  return "?";
}

double ScalarFn::operator()(double u) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return p_ * u;
    case Kind::Burgers: return 0.5 * u * u;
    case Kind::Identity: return u;
    case Kind::Power: return std::copysign(std::pow(std::abs(u), p_), u);
    case Kind::Stefan: return std::max(u - p_, 0.0);
    case Kind::Table: return table_eval(table_, u);
  }
  return 0.0;
}

double ScalarFn::derivative(double u) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return p_;
    case Kind::Burgers: return u;
    case Kind::Identity: return 1.0;
    case Kind::Power: return p_ * std::pow(std::abs(u), p_ - 1.0);
    case Kind::Stefan: return u > p_ ? 1.0 : 0.0;
    case Kind::Table: return table_slope(table_, table_segment(table_, u));
  }
  return 0.0;
}

double ScalarFn::primitive(double u) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return 0.5 * p_ * u * u;
    case Kind::Burgers: return u * u * u / 6.0;
    case Kind::Identity: return 0.5 * u * u;
    case Kind::Power: return std::pow(std::abs(u), p_ + 1.0) / (p_ + 1.0);
    case Kind::Stefan: {
      const double e = std::max(u - p_, 0.0);
      return 0.5 * e * e;
    }
    case Kind::Table:
      return table_integral(table_, 0.0, u, [&](double lo, double hi, int) {
        return 0.5 * (table_eval(table_, lo) + table_eval(table_, hi)) * (hi - lo);
      });
  }
  return 0.0;
}

double ScalarFn::increasing_part(double u) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return std::max(p_, 0.0) * u;
    case Kind::Burgers: {
      const double e = std::max(u, 0.0);
      return 0.5 * e * e;
    }
    case Kind::Identity:
    case Kind::Power:
    case Kind::Stefan: return (*this)(u);
    case Kind::Table:
      return table_integral(table_, 0.0, u, [&](double lo, double hi, int s) {
        return std::max(table_slope(table_, s), 0.0) * (hi - lo);
      });
  }
  return 0.0;
}

double ScalarFn::decreasing_part(double u) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return std::min(p_, 0.0) * u;
    case Kind::Burgers: {
      const double e = std::min(u, 0.0);
      return 0.5 * e * e;
    }
    case Kind::Identity:
    case Kind::Power:
    case Kind::Stefan: return 0.0;
    case Kind::Table:
      return table_integral(table_, 0.0, u, [&](double lo, double hi, int s) {
        return std::min(table_slope(table_, s), 0.0) * (hi - lo);
      });
  }
  return 0.0;
}

double ScalarFn::lipschitz(double lo, double hi) const {
  if (lo > hi) std::swap(lo, hi);
  const double amax = std::max(std::abs(lo), std::abs(hi));
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return std::abs(p_);
    case Kind::Burgers: return amax;
    case Kind::Identity: return 1.0;
    case Kind::Power: return p_ * std::pow(amax, p_ - 1.0);
    case Kind::Stefan: return hi > p_ ? 1.0 : 0.0;
    case Kind::Table: {
      const int s0 = table_segment(table_, lo), s1 = table_segment(table_, hi);
      double L = 0.0;
      for (int s = s0; s <= s1; ++s) L = std::max(L, std::abs(table_slope(table_, s)));
      return L;
    }
  }
  return 0.0;
}

bool ScalarFn::is_zero_on(double lo, double hi) const {
  if (lo > hi) std::swap(lo, hi);
  switch (kind_) {
    case Kind::Zero: return true;
    case Kind::Linear: return p_ == 0.0;
    case Kind::Burgers:
    case Kind::Identity:
    case Kind::Power: return lo == 0.0 && hi == 0.0;
    case Kind::Stefan: return hi <= p_;
    case Kind::Table: {
      if (table_eval(table_, lo) != 0.0 || table_eval(table_, hi) != 0.0) return false;
      for (std::size_t i = 0; i < table_.x.size(); ++i)
        if (table_.x[i] > lo && table_.x[i] < hi && table_.y[i] != 0.0) return false;
      return true;
    }
  }
  return false;
}

FluxFn FluxFn::linear(double c, int dim) {
  FluxFn f{ScalarFn::linear(c), {1.0, 0.0}};
  if (dim == 2) f.direction = {1.0, 1.0};
  return f;
}

FluxFn FluxFn::burgers(int dim) {
  FluxFn f{ScalarFn::burgers(), {1.0, 0.0}};
  if (dim == 2) f.direction = {1.0, 1.0};
  return f;
}

FluxFn FluxFn::zero(int /*dim*/) { return FluxFn{ScalarFn::zero(), {1.0, 0.0}}; }

double FluxFn::lipschitz(double lo, double hi) const {
  return std::max(std::abs(direction[0]), std::abs(direction[1])) * g.lipschitz(lo, hi);
}

double DiffusionFn::entropy_h(double u, double k) const {
  return b.primitive(u) - b.primitive(k) - b(k) * (u - k);
}

DomainMask DomainMask::interval(double a1, double a2) {
  require(std::isfinite(a1) && std::isfinite(a2) && a1 < a2, Errc::InvalidArgument, "interval needs a1 < a2");
  DomainMask m;
  m.shape_ = Shape::Interval;
  m.dim_ = 1;
  m.a_ = {a1, 0.0};
  m.b_ = {a2, 0.0};
  m.box_lo_ = m.a_;
  m.box_hi_ = m.b_;
  return m;
}

DomainMask DomainMask::box(Point lo, Point hi) {
  require(lo[0] < hi[0] && lo[1] < hi[1], Errc::InvalidArgument, "box needs lo < hi in each axis");
  DomainMask m;
  m.shape_ = Shape::Box;
  m.dim_ = 2;
  m.a_ = lo;
  m.b_ = hi;
  m.box_lo_ = lo;
  m.box_hi_ = hi;
  return m;
}

DomainMask DomainMask::ball(Point center, double radius, int dim) {
  require(radius > 0.0 && std::isfinite(radius), Errc::InvalidArgument, "ball radius must be positive");
  require(dim == 1 || dim == 2, Errc::InvalidArgument, "ball dimension must be 1 or 2");
  if (dim == 1) return interval(center[0] - radius, center[0] + radius);
  DomainMask m;
  m.shape_ = Shape::Ball;
  m.dim_ = 2;
  m.a_ = center;
  m.radius_ = radius;
  m.box_lo_ = {center[0] - radius, center[1] - radius};
  m.box_hi_ = {center[0] + radius, center[1] + radius};
  return m;
}

DomainMask DomainMask::with_box(Point lo, Point hi) const {
  DomainMask m = *this;
  for (int i = 0; i < dim_; ++i)
    require(lo[i] <= box_lo_[i] && hi[i] >= box_hi_[i], Errc::InvalidArgument,
            "computational box must contain the domain");
  m.box_lo_ = lo;
  m.box_hi_ = hi;
  if (dim_ == 1) {
    m.box_lo_[1] = 0.0;
    m.box_hi_[1] = 0.0;
  }
  return m;
}

double DomainMask::signed_distance(const Point& x) const {
  switch (shape_) {
    case Shape::Interval: return std::max(a_[0] - x[0], x[0] - b_[0]);
    case Shape::Ball: return std::hypot(x[0] - a_[0], x[1] - a_[1]) - radius_;
    case Shape::Box: {
      const double qx = std::max(a_[0] - x[0], x[0] - b_[0]);
      const double qy = std::max(a_[1] - x[1], x[1] - b_[1]);
      const double outside = std::hypot(std::max(qx, 0.0), std::max(qy, 0.0));
      return outside > 0.0 ? outside : std::max(qx, qy);
    }
  }
  return 0.0;
}

std::vector<BoundaryNode> DomainMask::boundary_nodes(double spacing) const {
  require(spacing > 0.0, Errc::InvalidArgument, "boundary spacing must be positive");
  std::vector<BoundaryNode> nodes;
  switch (shape_) {
    case Shape::Interval:
      nodes.push_back({a_, 1.0, {-1.0, 0.0}});
      nodes.push_back({b_, 1.0, {1.0, 0.0}});
      break;
    case Shape::Ball: {
      const double len = 2.0 * std::numbers::pi * radius_;
      const int n = std::max(8, static_cast<int>(std::ceil(len / spacing)));
      for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * (i + 0.5) / n;
        const Point nrm{std::cos(th), std::sin(th)};
        nodes.push_back({{a_[0] + radius_ * nrm[0], a_[1] + radius_ * nrm[1]}, len / n, nrm});
      }
      break;
    }
    case Shape::Box: {
      auto edge = [&](Point p, Point q, Point nrm) {
        const double len = std::hypot(q[0] - p[0], q[1] - p[1]);
        const int n = std::max(1, static_cast<int>(std::ceil(len / spacing)));
        for (int i = 0; i < n; ++i) {
          const double s = (i + 0.5) / n;
          nodes.push_back({{p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])}, len / n, nrm});
        }
      };
      edge({a_[0], a_[1]}, {b_[0], a_[1]}, {0.0, -1.0});
      edge({b_[0], a_[1]}, {b_[0], b_[1]}, {1.0, 0.0});
      edge({b_[0], b_[1]}, {a_[0], b_[1]}, {0.0, 1.0});
      edge({a_[0], b_[1]}, {a_[0], a_[1]}, {-1.0, 0.0});
      break;
    }
  }
  return nodes;
}

namespace {

// Exterior sample points: a lattice over the computational box widened by half
// its size on each side, keeping points outside the domain.
std::vector<Point> exterior_samples(const DomainMask& dom, int per_axis) {
  std::vector<Point> pts;
  const Point lo = dom.box_lo(), hi = dom.box_hi();
  const int ny = dom.dim() == 2 ? per_axis : 1;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < per_axis; ++i) {
      Point p{0.0, 0.0};
      for (int a = 0; a < dom.dim(); ++a) {
        const int idx = a == 0 ? i : j;
        const double w = hi[a] - lo[a];
        p[a] = lo[a] - 0.5 * w + 2.0 * w * (idx + 0.5) / per_axis;
      }
      if (!dom.inside(p)) pts.push_back(p);
    }
  }
  return pts;
}

std::vector<Point> interior_samples(const DomainMask& dom, int per_axis) {
  std::vector<Point> pts;
  const Point lo = dom.box_lo(), hi = dom.box_hi();
  const int ny = dom.dim() == 2 ? per_axis : 1;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < per_axis; ++i) {
      Point p{lo[0] + (hi[0] - lo[0]) * (i + 0.5) / per_axis, 0.0};
      if (dom.dim() == 2) p[1] = lo[1] + (hi[1] - lo[1]) * (j + 0.5) / per_axis;
      if (dom.inside(p)) pts.push_back(p);
    }
  }
  return pts;
}

}  // namespace

void validate_problem(const ProblemSpec& spec, int samples) {
  require(spec.T > 0.0 && std::isfinite(spec.T), Errc::InvalidProblem, "horizon T must be positive");
  require(static_cast<bool>(spec.u0) && static_cast<bool>(spec.u_ext) && static_cast<bool>(spec.extension),
          Errc::InvalidProblem, "u0, u_ext and the extension must all be set");
  require(spec.flux.g(0.0) == 0.0, Errc::InvalidProblem, "flux must satisfy f(0) = 0");
  require(spec.diffusion(0.0) == 0.0, Errc::InvalidProblem, "diffusion must satisfy b(0) = 0");

  const int per_axis = spec.dim() == 1 ? 256 : 48;
  DataRange range{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point& p : interior_samples(spec.domain, per_axis)) range.include(spec.u0(p));

  const auto ext = exterior_samples(spec.domain, per_axis);
  constexpr int kTimes = 9;
  for (int n = 0; n < kTimes; ++n) {
    const double t = spec.T * n / (kTimes - 1);
    for (const Point& p : ext) {
      const double a = spec.u_ext(t, p), e = spec.extension(t, p);
      require(std::isfinite(a) && std::isfinite(e), Errc::InvalidProblem, "exterior data must be finite");
      if (std::abs(a - e) > 1e-12 * (1.0 + std::abs(a))) {
        std::ostringstream os;
        os << "extension differs from u_ext at t=" << t << ", x=(" << p[0] << "," << p[1] << "): " << e << " vs " << a;
        fail(Errc::ExtensionMismatch, os.str());
      }
      range.include(a);
    }
  }
  require(std::isfinite(range.lo) && std::isfinite(range.hi), Errc::InvalidProblem, "data must be bounded");

  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> U(range.lo, range.hi);
  for (int i = 0; i < samples; ++i) {
    double s = U(rng), t = U(rng);
    if (s > t) std::swap(s, t);
    if (spec.diffusion(s) > spec.diffusion(t)) {
      std::ostringstream os;
      os << "b is not nondecreasing: b(" << s << ") > b(" << t << ")";
      fail(Errc::InvalidProblem, os.str());
    }
  }
}

double eval_extension(const ProblemSpec& spec, double t, const Point& x) {
  const double slack = 1e-12 * spec.T;
  if (!(t >= -slack && t <= spec.T + slack)) {
    std::ostringstream os;
    os << "t=" << t << " outside [0, " << spec.T << "]";
    fail(Errc::OutOfTimeRange, os.str());
  }
  return spec.extension(std::clamp(t, 0.0, spec.T), x);
}

int halo_cells_for(double Z, double dx) {
  require(dx > 0.0 && Z >= 0.0, Errc::InvalidArgument, "halo needs dx > 0 and Z >= 0");
  return static_cast<int>(std::ceil(Z / dx - 1e-9)) + 1;
}

Discretization discretize(const ProblemSpec& spec, double dx, int halo_cells, int required_reach) {
  require(dx > 0.0 && std::isfinite(dx), Errc::DegenerateGrid, "dx must be positive");
  require(halo_cells >= 0, Errc::InvalidArgument, "halo cell count must be nonnegative");
  if (halo_cells < required_reach) {
    std::ostringstream os;
    os << "halo of " << halo_cells << " cells is narrower than the stencil reach of " << required_reach;
    fail(Errc::HaloTooSmall, os.str());
  }
  const int d = spec.dim();
  Grid g;
  g.dim = d;
  g.dx = dx;
  for (int a = 0; a < d; ++a) {
    const double cells = (spec.domain.box_hi()[a] - spec.domain.box_lo()[a]) / dx;
    const double rounded = std::round(cells);
    require(rounded >= 1.0 && std::abs(cells - rounded) <= 1e-9 * std::max(1.0, cells), Errc::InvalidArgument,
            "dx must divide the computational box evenly");
    g.n[a] = static_cast<int>(rounded) + 2 * halo_cells;
    g.lo[a] = spec.domain.box_lo()[a] - halo_cells * dx;
  }
  if (d == 1) g.n[1] = 1;

  Discretization out;
  out.grid = g;
  out.halo_cells = halo_cells;
  out.interior.assign(g.size(), 0);
  out.u0 = Field(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Point x = g.center(k);
    if (spec.domain.inside(x)) {
      out.interior[k] = 1;
      out.interior_cells.push_back(k);
    } else {
      out.exterior_cells.push_back(k);
    }
  }
  require(!out.interior_cells.empty(), Errc::EmptyInterior, "no cell centre lies inside the domain");

  DataRange range{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t k : out.interior_cells) {
    out.u0[k] = spec.u0(g.center(k));
    require(std::isfinite(out.u0[k]), Errc::NonfiniteValue, "u0 is not finite");
    range.include(out.u0[k]);
  }
  constexpr int kTimes = 33;
  for (int n = 0; n < kTimes; ++n) {
    const double t = spec.T * n / (kTimes - 1);
    for (std::size_t k : out.exterior_cells) {
      const double v = spec.u_ext(t, g.center(k));
      require(std::isfinite(v), Errc::NonfiniteValue, "u_ext is not finite");
      range.include(v);
    }
  }
  for (std::size_t k : out.exterior_cells) out.u0[k] = spec.extension(0.0, g.center(k));
  out.range = range;
  out.lip_f = spec.flux.lipschitz(range.lo, range.hi);
  out.lip_b = spec.diffusion.b.lipschitz(range.lo, range.hi);
  return out;
}

double smoothstep5(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double smoothstep5_derivative(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double q = s * (1.0 - s);
  return 30.0 * q * q;
}

}  // namespace nldp
