#include "pilot/qm/interpolation.hpp"

#include <cmath>

namespace pilot::qm {

CubicStencil cubic_stencil(const SpatialGrid& grid, double x) noexcept {
  const double u = (x - grid.coordinate(0)) / grid.spacing();
  const double fl = std::floor(u);
  const double t = u - fl;
  const long i = static_cast<long>(fl);
  CubicStencil s{};
  s.weight = {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
              -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
  const long n = static_cast<long>(grid.points_per_axis());
  for (int j = 0; j < 4; ++j) {
    long idx = i - 1 + j;
    if (grid.periodic()) {
      idx %= n;
      if (idx < 0) idx += n;
    } else if (idx < 0 || idx >= n) {
      idx = -1;
    }
    s.index[static_cast<std::size_t>(j)] = idx;
  }
  return s;
}

Complex interpolate(const SpatialGrid& grid, std::span<const Complex> field,
                    std::span<const double> position) noexcept {
  const auto s0 = cubic_stencil(grid, position[0]);
  Complex out{};
  if (grid.dimension() == 1) {
    for (std::size_t a = 0; a < 4; ++a) {
      if (s0.index[a] >= 0) out += s0.weight[a] * field[static_cast<std::size_t>(s0.index[a])];
    }
    return out;
  }
  const auto s1 = cubic_stencil(grid, position[1]);
  const std::size_t n = grid.points_per_axis();
  for (std::size_t a = 0; a < 4; ++a) {
    if (s0.index[a] < 0) continue;
    Complex row{};
    const std::size_t base = static_cast<std::size_t>(s0.index[a]) * n;
    for (std::size_t b = 0; b < 4; ++b) {
      if (s1.index[b] >= 0) row += s1.weight[b] * field[base + static_cast<std::size_t>(s1.index[b])];
    }
    out += s0.weight[a] * row;
  }
  return out;
}

}  // namespace pilot::qm
