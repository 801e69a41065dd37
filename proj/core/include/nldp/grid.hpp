#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace nldp {

/// Points and vectors in R^d for d <= 2; unused trailing components are zero.
using Point = std::array<double, 2>;

inline double dot(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}
double norm(const Point& a, int dim);

/// Uniform cell-centred grid on an axis-aligned box. Cell (i, j) has centre
/// lo + ((i + 1/2) dx, (j + 1/2) dx); x varies fastest in the flat index.
struct Grid {
  int dim = 1;
  std::array<int, 2> n{0, 1};
  Point lo{0.0, 0.0};
  double dx = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]); }
  std::size_t flat(int i, int j = 0) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(j);
  }
  std::array<int, 2> ij(std::size_t k) const {
    return {static_cast<int>(k % static_cast<std::size_t>(n[0])), static_cast<int>(k / static_cast<std::size_t>(n[0]))};
  }
  Point center(std::size_t k) const;
  Point center(int i, int j) const;
  bool contains(int i, int j) const { return i >= 0 && i < n[0] && j >= 0 && j < n[1]; }
  double cell_volume() const { return dim == 1 ? dx : dx * dx; }
  Point hi() const;

  bool operator==(const Grid&) const = default;
};

/// Gridded scalar function on the whole computational box (interior and halo).
struct Field {
  Grid grid;
  std::vector<double> v;

  Field() = default;
  explicit Field(const Grid& g, double value = 0.0) : grid(g), v(g.size(), value) {}

  double& operator[](std::size_t k) { return v[k]; }
  double operator[](std::size_t k) const { return v[k]; }
  std::size_t size() const { return v.size(); }
};

}  // namespace nldp
