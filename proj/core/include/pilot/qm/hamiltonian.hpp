#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "pilot/qm/grid.hpp"

namespace pilot::qm {

/// Von Neumann measurement coupling g * x_source * p_target between two grid axes.
struct MomentumCoupling {
  int source_axis = 0;
  int target_axis = 1;
  double strength = 0.0;
};

/// H = sum_a p_a^2 / 2 m_a + V(x) + C (internal) [+ g x_s p_t] [- i W(x)].
struct HamiltonianSpec {
  std::vector<double> masses{1.0};
  /// One real value per grid point; empty means V = 0.
  std::vector<double> potential;
  /// Hermitian s x s matrix acting on internal components at every point.
  std::optional<Eigen::MatrixXcd> internal_coupling;
  std::optional<MomentumCoupling> momentum_coupling;
  /// Optional absorbing layer W >= 0 entering as -iW; breaks unitarity by construction.
  std::vector<double> absorption;
  double hbar = 1.0;

  double mass(int axis) const { return masses.size() == 1 ? masses[0] : masses.at(axis); }
  double potential_at(std::size_t point) const { return potential.empty() ? 0.0 : potential[point]; }

  /// Throws InvalidInput/ShapeMismatch when inconsistent with the grid or component count.
  void validate(const SpatialGrid& grid, int components) const;
};

std::vector<double> sample_potential(const SpatialGrid& grid,
                                     const std::function<double(double, double)>& v);

/// 1/2 m omega^2 |x - center|^2 summed over axes.
std::vector<double> harmonic_potential(const SpatialGrid& grid, double mass, double omega,
                                       double center = 0.0);

}  // namespace pilot::qm
