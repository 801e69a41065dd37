#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "nldp/grid.hpp"
#include "nldp/levy_measure.hpp"

namespace nldp {

using Offset = std::array<int, 2>;
using PointFn = std::function<double(const Point&)>;

struct StencilEntry {
  Offset offset{0, 0};
  double weight = 0.0;
};

/// Discrete Levy operator on a grid of spacing dx:
///   L_h v(x) = sum_j w_j (v(x + j dx) - v(x)) + tail (v_far - v(x)).
/// Entries hold every nonzero w_j for j and -j; w_{+-e_i} include `correction`.
struct StencilWeights {
  int dim = 1;
  double dx = 0.0;
  double r = 0.0;
  double Z = 0.0;
  std::vector<StencilEntry> entries;
  double sigma2 = 0.0;      ///< second moment of mu on {|z| < r}
  double correction = 0.0;  ///< sigma2 / (2 d dx^2), added to each nearest neighbour
  double tail = 0.0;        ///< mu({|z| > Z})
  double weight_sum = 0.0;  ///< sum of all w_j

  int reach() const;
  double weight(const Offset& j) const;
  /// Weight without the nearest-neighbour correction.
  double raw_weight(const Offset& j) const;
};

StencilWeights build_stencil(const LevyMeasure& mu, double dx, double r, double Z);

/// Splits at radius rho: the inner part keeps the correction and every raw w_j
/// with |j| dx < rho; the outer part keeps the rest and the tail.
struct StencilSplit {
  StencilWeights inner;
  StencilWeights outer;
};
StencilSplit split_stencil(const StencilWeights& s, double rho);

/// Copy with the tail removed (drop-tail policy).
StencilWeights without_tail(const StencilWeights& s);

/// Precomputed flat offsets of a stencil on one grid. `apply` requires that
/// every shift of cell k stays inside the grid (see `fits`).
class StencilKernel {
 public:
  StencilKernel(const StencilWeights& s, const Grid& g);
  bool fits(std::size_t k) const;
  double apply(const double* v, std::size_t k, double far_value) const;

 private:
  Grid grid_;
  int reach_ = 0;
  double tail_ = 0.0;
  std::vector<std::ptrdiff_t> half_offsets_;
  std::vector<double> half_weights_;
};

/// Applies the stencil at every cell flagged in `where` (all cells when null);
/// other cells are set to zero. Shifts that leave the grid read `exterior`;
/// without an exterior reader such shifts raise HaloTooSmall.
Field apply_stencil(const Field& v, const StencilWeights& s, const PointFn& exterior, double far_value,
                    const std::vector<std::uint8_t>* where = nullptr);

/// Stencil applied to a closed-form function at one point.
double apply_stencil_at(const PointFn& fn, const Point& x, const StencilWeights& s, double far_value);

/// Discrete B[phi, psi] summed over all lattice points, with both fields taken
/// as zero outside the grid and at the far field.
double bilinear_energy(const Field& phi, const Field& psi, const StencilWeights& s);

/// CSV with header `offset,weight`; 2-d offsets are written as `i;j`.
void write_stencil_csv(std::ostream& os, const StencilWeights& s);

}  // namespace nldp
