#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nldp/levy_measure.hpp"
#include "nldp/problem.hpp"
#include "nldp/scheme.hpp"
#include "nldp/stencil.hpp"

namespace nldp {

/// Separable nonnegative test function phi(t, x) = theta(t) psi(x) with
/// theta(T) = 0 and psi supported in the box [support_lo, support_hi].
struct TestFunction {
  std::string label;
  std::function<double(const Point&)> psi;
  std::function<Point(const Point&)> grad_psi;
  std::function<double(double)> theta;
  std::function<double(double)> theta_dt;
  Point support_lo{0.0, 0.0};
  Point support_hi{0.0, 0.0};
};

struct TestFunctionFamily {
  std::vector<TestFunction> phis;
  std::vector<double> levels;
};

/// 3 space scales x 3 centres (cos^4 bumps, C^3) x 3 time profiles, and the
/// 7 levels m - d/10, m + {1,3,5,7,9} d/10, M + d/10 of the range [m, M], d = M - m.
TestFunctionFamily default_test_family(const ProblemSpec& spec, const DataRange& range);

enum class EntropySign { Plus, Minus };

struct EntropyTerm {
  std::string phi;
  double k = 0.0;
  EntropySign sign = EntropySign::Plus;
  double r = 0.0;
  bool admissible = true;
  double time_term = 0.0;     ///< -int (u-k)^+- phi_t
  double flux_term = 0.0;     ///< -int F^+-(u,k) . grad phi
  double outer_term = 0.0;    ///< -int L^{>=r}[b(u)] sgn^+-(u-k) phi
  double inner_term = 0.0;    ///< -int_M (b(u)-b(k))^+- L^{<r}[phi]
  double initial_term = 0.0;  ///< int (u0-k)^+- phi(0)
  double boundary_term = 0.0; ///< L_f int_Gamma (e-k)^+- phi
  double residual = 0.0;      ///< LHS - RHS
};

struct EntropyResidualReport {
  std::vector<EntropyTerm> terms;  ///< admissible and skipped triples alike
  double worst_residual = 0.0;     ///< over admissible triples
  std::size_t admissible = 0;
  std::size_t skipped = 0;         ///< inadmissible triples
};

/// Discrete entropy inequalities for every (phi, k, +-, r). Each r must be at
/// least the stencil's splitting radius.
EntropyResidualReport entropy_residual(const Trajectory& traj, const ProblemSpec& spec, const StencilWeights& stencil,
                                       const TestFunctionFamily& family, const std::vector<double>& r_list);

struct EntropySweep {
  EntropyResidualReport coarse;
  EntropyResidualReport fine;
  double h_coarse = 0.0;  ///< dx + dt on the coarse grid
  double h_fine = 0.0;
  double constant = 0.0;  ///< C = max |R_coarse - R_fine| / (h_coarse - h_fine)
  double eps_coarse = 0.0;
  double eps_fine = 0.0;
  double worst_margin = 0.0;  ///< min over admissible triples and both grids of eps - residual
  bool pass = false;
};

/// Two-grid sweep with dx_fine = dx_coarse / 2; r in {1, 4, 16} dx_coarse.
EntropySweep entropy_refinement(const ProblemSpec& spec, const LevyMeasure& mu, const SchemeConfig& cfg,
                                double dx_coarse);

}  // namespace nldp
