#pragma once

#include <array>
#include <span>

#include "pilot/qm/grid.hpp"
#include "pilot/qm/wavefunction.hpp"

namespace pilot::qm {

/// Four-point Lagrange stencil along one axis. Indices outside a hard-wall grid carry
/// weight but contribute zero (the wavefunction vanishes at and beyond the walls).
struct CubicStencil {
  std::array<long, 4> index;
  std::array<double, 4> weight;
};

CubicStencil cubic_stencil(const SpatialGrid& grid, double x) noexcept;

/// Local cubic interpolation of a grid field at an off-grid position (one coordinate per axis).
Complex interpolate(const SpatialGrid& grid, std::span<const Complex> field,
                    std::span<const double> position) noexcept;

}  // namespace pilot::qm
