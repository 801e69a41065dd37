#pragma once

#include "nldp/grid.hpp"
#include "nldp/multiplier.hpp"
#include "nldp/stencil.hpp"

namespace nldp {

struct FourierEnergyCheck {
  double lhs = 0.0;      ///< real-space bilinear energy from the stencil
  double rhs = 0.0;      ///< (2 pi)^{-1} sum m(xi) |phi_hat(xi)|^2 dxi over the DFT frequencies
  double rel_err = 0.0;  ///< |lhs - rhs| / max(|lhs|, |rhs|); zero when both vanish
  bool power_of_two = true;
};

/// Compares both sides of the Plancherel form of the energy for a 1-d field.
/// phi_hat(xi) = integral phi(x) e^{-i xi x} dx is approximated by dx times the DFT.
FourierEnergyCheck fourier_energy_check(const Field& phi, const MultiplierEval& ev, const StencilWeights& s);

}  // namespace nldp
