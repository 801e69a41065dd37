#pragma once

#include <string>
#include <vector>

#include "nldp/diagnostics.hpp"
#include "nldp/levy_measure.hpp"
#include "nldp/problem.hpp"
#include "nldp/scheme.hpp"

namespace nldp::app {

/// Per-step mass bookkeeping tolerance.
inline constexpr double kBalanceTol = 1e-12;

/// Same problem with u0 + amp * cos^4 bump centred in the domain's box (quarter-box half-width).
ProblemSpec perturbed(const ProblemSpec& spec, double amp, double center_frac = 0.5);

/// Solves both problems on one grid with the smaller of their CFL steps and
/// compares them with l1_contraction_check.
ContractionSeries contraction_pair(const ProblemSpec& u, const ProblemSpec& v, const StencilWeights& stencil,
                                   const SchemeConfig& cfg);

/// gap_k <= gap_0 (2 L_b mass T)^k / k! * 1.1 for k = 1..8 (as far as the gaps go).
Check picard_envelope(const PicardResult& p, double lip_b, double T);

/// Strictly decreasing sequence; slack is the smallest consecutive drop.
Check decreasing_check(const std::string& name, const std::vector<double>& v);

struct StabilityEvidence {
  ChainResult chain;
  UniformEnergySeries energy;
  ModuliTable sup_moduli;  ///< sup over the chain of the space moduli, shifts 16, 8, 4, 2, 1 cells
  std::vector<Check> checks;
};

/// Chain of restrictions of `base` to |z| >= 1/n against the 1/reference restriction.
StabilityEvidence truncation_chain(const ProblemSpec& spec, const LevyMeasure& base, const std::vector<int>& n_list,
                                   int reference, const SchemeConfig& cfg);

}  // namespace nldp::app
