#include "nldp/presets.hpp"

#include <cmath>
#include <numbers>

#include "nldp/error.hpp"

namespace nldp {

double cos4_bump(double x, double center, double halfwidth, double amplitude) {
  const double s = (x - center) / halfwidth;
  if (std::abs(s) >= 1.0) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * s);
  return amplitude * c * c * c * c;
}

void set_two_state_exterior(ProblemSpec& spec, double left, double right, double a, double b) {
  const double jump = right - left, w = b - a;
  spec.extension = [=](double, const Point& x) { return left + jump * smoothstep5((x[0] - a) / w); };
  spec.u_ext = spec.extension;
  spec.extension_dt = [](double, const Point&) { return 0.0; };
  spec.extension_grad = [=](double, const Point& x) {
    return Point{jump * smoothstep5_derivative((x[0] - a) / w) / w, 0.0};
  };
}

void set_constant_exterior(ProblemSpec& spec, double value) {
  spec.extension = [value](double, const Point&) { return value; };
  spec.u_ext = spec.extension;
  spec.extension_dt = [](double, const Point&) { return 0.0; };
  spec.extension_grad = [](double, const Point&) { return Point{0.0, 0.0}; };
}

namespace {

ProblemSpec base(const std::string& name, FluxFn f, DiffusionFn b) {
  ProblemSpec s;
  s.name = name;
  s.domain = DomainMask::interval(0.0, 1.0);
  s.flux = f;
  s.diffusion = b;
  s.T = 0.5;
  return s;
}

void riemann(ProblemSpec& s, double left, double right) {
  s.u0 = [=](const Point& x) { return x[0] < 0.5 ? left : right; };
  set_two_state_exterior(s, left, right, 0.0, 1.0);
}

void bump(ProblemSpec& s) {
  s.u0 = [](const Point& x) { return cos4_bump(x[0], 0.5, 0.3); };
  set_constant_exterior(s, 0.0);
}

}  // namespace

ProblemSpec problem_preset(const std::string& name) {
  if (name == "burgers_riemann") {
    auto s = base(name, FluxFn::burgers(), DiffusionFn::zero());
    riemann(s, 1.0, 0.0);
    return s;
  }
  if (name == "burgers_rarefaction") {
    auto s = base(name, FluxFn::burgers(), DiffusionFn::zero());
    riemann(s, 0.0, 1.0);
    return s;
  }
  if (name == "burgers_bump") {
    auto s = base(name, FluxFn::burgers(), DiffusionFn::identity());
    bump(s);
    return s;
  }
  if (name == "linear_bump") {
    auto s = base(name, FluxFn::linear(1.0), DiffusionFn::zero());
    bump(s);
    return s;
  }
  if (name == "porous_bump") {
    auto s = base(name, FluxFn::burgers(), DiffusionFn::power(2.0));
    bump(s);
    return s;
  }
  if (name == "stefan_riemann") {
    auto s = base(name, FluxFn::burgers(), DiffusionFn::stefan(0.5));
    riemann(s, 1.0, 0.0);
    return s;
  }
  if (name == "unit_in_zero_out") {
    auto s = base(name, FluxFn::zero(), DiffusionFn::zero());
    s.u0 = [](const Point&) { return 1.0; };
    set_constant_exterior(s, 0.0);
    return s;
  }
  if (name == "constant") {
    auto s = base(name, FluxFn::burgers(), DiffusionFn::identity());
    s.u0 = [](const Point&) { return 1.0; };
    set_constant_exterior(s, 1.0);
    return s;
  }
  if (name == "sine_decay") {
    auto s = base(name, FluxFn::linear(1.0), DiffusionFn::identity());
    s.u0 = [](const Point& x) { return std::sin(x[0]); };
    s.extension = [](double t, const Point& x) { return std::sin(x[0]) * std::exp(-t); };
    s.u_ext = s.extension;
    s.extension_dt = [](double t, const Point& x) { return -std::sin(x[0]) * std::exp(-t); };
    s.extension_grad = [](double t, const Point& x) { return Point{std::cos(x[0]) * std::exp(-t), 0.0}; };
    return s;
  }
  if (name == "ball2d") {
    auto s = base(name, FluxFn::burgers(2), DiffusionFn::identity());
    s.domain = DomainMask::ball({0.0, 0.0}, 0.4).with_box({-1.0, -1.0}, {1.0, 1.0});
    s.u0 = [](const Point& x) { return cos4_bump(std::hypot(x[0], x[1]), 0.0, 0.3); };
    set_constant_exterior(s, 0.0);
    return s;
  }
  fail(Errc::UnknownPreset, "unknown problem preset '" + name + "'");
}

std::vector<std::string> problem_preset_names() {
  return {"burgers_riemann", "burgers_rarefaction", "burgers_bump", "linear_bump", "porous_bump",
          "stefan_riemann",  "unit_in_zero_out",    "constant",     "sine_decay",  "ball2d"};
}

LevyMeasure measure_preset(const std::string& name, int dim) {
  require(dim == 1 || dim == 2, Errc::InvalidArgument, "measure dimension must be 1 or 2");
  if (name == "none") return LevyMeasure::zero(dim);
  if (name == "atomic") {
    if (dim == 1) return LevyMeasure::single_atom(0.125, 0.5);
    return LevyMeasure::atomic({{{0.125, 0.0}, 0.25}, {{0.0, 0.125}, 0.25}}, 2);
  }
  if (name == "fractional") return LevyMeasure::fractional(1.0, dim, 1.0);
  if (name == "fractional_trunc") return LevyMeasure::fractional(1.0, dim, 1.0).restricted(1.0 / 16.0);
  if (name == "dyadic_a" || name == "dyadic_b") {
    require(dim == 1, Errc::UnsupportedPair, "dyadic measures are one-dimensional");
    return name == "dyadic_a" ? LevyMeasure::dyadic_a() : LevyMeasure::dyadic_b();
  }
  fail(Errc::UnknownPreset, "unknown measure preset '" + name + "'");
}

std::vector<std::string> measure_preset_names() {
  return {"none", "atomic", "fractional", "fractional_trunc", "dyadic_a", "dyadic_b"};
}

}  // namespace nldp
