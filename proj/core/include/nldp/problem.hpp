#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nldp/grid.hpp"

namespace nldp {

/// Breakpoints x (strictly increasing) and values y; linear in between, extended
/// with the end slopes outside.
struct PiecewiseLinear {
  std::vector<double> x;
  std::vector<double> y;
};

/// Scalar nonlinearity u -> g(u) with the closed forms the scheme and the
/// diagnostics need (derivative, primitive, monotone splitting, Lipschitz bound).
class ScalarFn {
 public:
  enum class Kind { Zero, Linear, Burgers, Identity, Power, Stefan, Table };

  static ScalarFn zero();
  static ScalarFn linear(double c);
  static ScalarFn burgers();
  static ScalarFn identity();
  static ScalarFn power(double m);
  static ScalarFn stefan(double level);
  static ScalarFn table(PiecewiseLinear t);

  Kind kind() const { return kind_; }
  double param() const { return p_; }
  const PiecewiseLinear& table_data() const { return table_; }
  std::string name() const;

  double operator()(double u) const;
  double derivative(double u) const;
  /// Integral of g over [0, u].
  double primitive(double u) const;
  /// Integral of max(g', 0) over [0, u]; together with `decreasing_part` sums to g(u) - g(0).
  double increasing_part(double u) const;
  double decreasing_part(double u) const;
  /// Upper bound of |g'| on [lo, hi].
  double lipschitz(double lo, double hi) const;
  bool is_zero_on(double lo, double hi) const;

 private:
  ScalarFn(Kind k, double p) : kind_(k), p_(p) {}
  Kind kind_;
  double p_ = 0.0;
  PiecewiseLinear table_;
};

/// f(u) = direction * g(u), one component per axis.
struct FluxFn {
  ScalarFn g = ScalarFn::zero();
  Point direction{1.0, 0.0};

  static FluxFn linear(double c, int dim = 1);
  static FluxFn burgers(int dim = 1);
  static FluxFn zero(int dim = 1);

  double component(int axis, double u) const { return direction[axis] * g(u); }
  double lipschitz(double lo, double hi) const;
};

/// Nondecreasing b with b(0) = 0.
struct DiffusionFn {
  ScalarFn b = ScalarFn::zero();

  static DiffusionFn zero() { return {ScalarFn::zero()}; }
  static DiffusionFn identity() { return {ScalarFn::identity()}; }
  static DiffusionFn power(double m) { return {ScalarFn::power(m)}; }
  static DiffusionFn stefan(double level) { return {ScalarFn::stefan(level)}; }
  static DiffusionFn table(PiecewiseLinear t) { return {ScalarFn::table(std::move(t))}; }

  double operator()(double u) const { return b(u); }
  /// H(u, k) = integral over [k, u] of (b(s) - b(k)) ds.
  double entropy_h(double u, double k) const;
};

struct BoundaryNode {
  Point x{0.0, 0.0};
  double weight = 0.0;
  Point normal{0.0, 0.0};
};

/// Domain geometry plus the computational box it is embedded in.
class DomainMask {
 public:
  enum class Shape { Interval, Box, Ball };

  static DomainMask interval(double a1, double a2);
  static DomainMask box(Point lo, Point hi);
  static DomainMask ball(Point center, double radius, int dim = 2);

  /// Replaces the computational box (default: bounding box of the domain).
  DomainMask with_box(Point lo, Point hi) const;

  Shape shape() const { return shape_; }
  int dim() const { return dim_; }
  Point box_lo() const { return box_lo_; }
  Point box_hi() const { return box_hi_; }

  /// Negative inside, positive outside.
  double signed_distance(const Point& x) const;
  bool inside(const Point& x) const { return signed_distance(x) < 0.0; }
  /// Quadrature nodes on the boundary with surface weights; points for d = 1.
  std::vector<BoundaryNode> boundary_nodes(double spacing) const;

 private:
  Shape shape_ = Shape::Interval;
  int dim_ = 1;
  Point a_{0.0, 0.0}, b_{1.0, 0.0};
  double radius_ = 0.0;
  Point box_lo_{0.0, 0.0}, box_hi_{1.0, 0.0};
};

using SpaceTimeFn = std::function<double(double, const Point&)>;
using SpaceTimeGrad = std::function<Point(double, const Point&)>;

struct ProblemSpec {
  std::string name;
  DomainMask domain = DomainMask::interval(0.0, 1.0);
  FluxFn flux;
  DiffusionFn diffusion;
  std::function<double(const Point&)> u0;
  SpaceTimeFn u_ext;          ///< exterior datum, meaningful on the complement of the domain
  SpaceTimeFn extension;      ///< smooth extension of u_ext to all of [0,T] x R^d
  SpaceTimeFn extension_dt;   ///< optional closed-form time derivative of the extension
  SpaceTimeGrad extension_grad;  ///< optional closed-form gradient of the extension
  double T = 1.0;

  int dim() const { return domain.dim(); }
};

/// Checks normalization, monotonicity of b on `samples` random pairs in the
/// sampled data range, and that the extension agrees with u_ext on sampled
/// exterior points (ExtensionMismatch).
void validate_problem(const ProblemSpec& spec, int samples = 1000);

double eval_extension(const ProblemSpec& spec, double t, const Point& x);

struct DataRange {
  double lo = 0.0;
  double hi = 0.0;
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

struct Discretization {
  Grid grid;
  std::vector<std::uint8_t> interior;       ///< 1 for cells whose centre lies in the domain
  std::vector<std::size_t> interior_cells;
  std::vector<std::size_t> exterior_cells;
  int halo_cells = 0;
  Field u0;         ///< u0 on interior cells, extension at t = 0 elsewhere
  DataRange range;  ///< u0 samples and exterior samples over [0, T]
  double lip_f = 0.0;
  double lip_b = 0.0;
};

/// Number of halo cells that covers a stencil of radius Z.
int halo_cells_for(double Z, double dx);

/// Cell-centred discretization of the computational box widened by `halo_cells`.
/// `required_reach` is the stencil reach in cells that the halo must cover.
Discretization discretize(const ProblemSpec& spec, double dx, int halo_cells, int required_reach = 0);

/// Smooth 0 -> 1 transition (quintic, C^2) on [0, 1], constant outside.
double smoothstep5(double s);
double smoothstep5_derivative(double s);

}  // namespace nldp
