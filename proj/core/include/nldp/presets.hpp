#pragma once

#include <string>
#include <vector>

#include "nldp/levy_measure.hpp"
#include "nldp/problem.hpp"

namespace nldp {

/// Raised-cosine bump amp * cos^4(pi (x - c) / (2 w)) for |x - c| < w, zero outside (C^3).
double cos4_bump(double x, double center, double halfwidth, double amplitude = 1.0);

/// Exterior datum equal to `left` for x1 <= a and `right` for x1 >= b, with the
/// quintic smoothstep as extension across [a, b]; time independent.
void set_two_state_exterior(ProblemSpec& spec, double left, double right, double a, double b);

/// Exterior datum identically equal to `value`.
void set_constant_exterior(ProblemSpec& spec, double value);

/// Named instances:
///   burgers_riemann      Burgers, b = 0, u0 = 1 on (0, 1/2), 0 on (1/2, 1); exterior 1 | 0
///   burgers_rarefaction  Burgers, b = 0, u0 = 0 | 1; exterior 0 | 1
///   burgers_bump         Burgers, b = identity, cos^4 bump, zero exterior
///   linear_bump          f = u, b = 0, cos^4 bump, zero exterior
///   porous_bump          Burgers, b = u|u|, bump
///   stefan_riemann       Burgers, b = max(u - 1/2, 0), Riemann data 1 | 0
///   unit_in_zero_out     f = b = 0, u0 = 1, exterior 0
///   constant             f = Burgers, b = identity, u0 = exterior = 1
///   sine_decay           f = u, b = identity, u0 = sin(x), exterior sin(x) e^{-t}
///   ball2d               ball of radius 0.4 in [-1, 1]^2, diagonal Burgers, b = identity, bump
ProblemSpec problem_preset(const std::string& name);
std::vector<std::string> problem_preset_names();

/// none, atomic (atoms +-1/8 of weight 1/2), fractional (alpha = 1, c = 1),
/// fractional_trunc (the same restricted to |z| >= 1/16), dyadic_a, dyadic_b.
LevyMeasure measure_preset(const std::string& name, int dim = 1);
std::vector<std::string> measure_preset_names();

}  // namespace nldp
