#include "nldp/grid.hpp"

#include <cmath>

namespace nldp {

double norm(const Point& a, int dim) { return dim == 1 ? std::abs(a[0]) : std::hypot(a[0], a[1]); }

Point Grid::center(int i, int j) const {
  Point p{lo[0] + (i + 0.5) * dx, 0.0};
  if (dim == 2) p[1] = lo[1] + (j + 0.5) * dx;
  return p;
}

Point Grid::center(std::size_t k) const {
  auto c = ij(k);
  return center(c[0], c[1]);
}

Point Grid::hi() const {
  Point p{lo[0] + n[0] * dx, 0.0};
  if (dim == 2) p[1] = lo[1] + n[1] * dx;
  return p;
}

}  // namespace nldp
