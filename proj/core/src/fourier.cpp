#include "nldp/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "nldp/error.hpp"

namespace nldp {

namespace {
// FFTW planning mutates global planner state; execution is reentrant.
std::mutex planner_mutex;
}  // namespace

FourierEnergyCheck fourier_energy_check(const Field& phi, const MultiplierEval& ev, const StencilWeights& s) {
  require(phi.grid.dim == 1, Errc::ShapeMismatch, "Fourier energy check is one-dimensional");
  const std::size_t N = phi.size();
  if (N == 0) fail(Errc::EmptyGrid, "empty field");
  FourierEnergyCheck out;
  out.power_of_two = (N & (N - 1)) == 0;
  out.lhs = bilinear_energy(phi, phi, s);

  std::vector<double> in(phi.v);
  std::vector<fftw_complex> spec(N / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(N), in.data(), spec.data(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
  }

  const double dx = phi.grid.dx;
  const double dxi = 2.0 * std::numbers::pi / (static_cast<double>(N) * dx);
  // |phi_hat|^2 = dx^2 |F_k|^2 and dxi / (2 pi) = 1 / (N dx)
  double sum = 0.0;
  for (std::size_t k = 0; k <= N / 2; ++k) {
    const double p2 = spec[k][0] * spec[k][0] + spec[k][1] * spec[k][1];
    const bool paired = k != 0 && !(N % 2 == 0 && k == N / 2);
    sum += (paired ? 2.0 : 1.0) * ev(static_cast<double>(k) * dxi) * p2;
  }
  out.rhs = sum * dx / static_cast<double>(N);
  const double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
  out.rel_err = scale > 0.0 ? std::abs(out.lhs - out.rhs) / scale : 0.0;
  return out;
}

}  // namespace nldp
