#pragma once

#include <array>
#include <span>
#include <vector>

#include "pilot/qm/hamiltonian.hpp"
#include "pilot/qm/wavefunction.hpp"

namespace pilot::bohm {

using qm::Complex;
using Velocity = std::array<double, 2>;

/// Node threshold relative to the peak grid density.
inline constexpr double kDefaultNodeThreshold = 1e-12;

/// Bohmian velocity field of one wavefunction snapshot:
/// v_a = (hbar / m_a) Im(psi^dagger d_a psi) / (psi^dagger psi), components summed,
/// plus g x_s on the target axis when a momentum coupling is present.
///
/// psi and its spectral gradient are tabulated on the grid and evaluated off-grid with
/// local cubic interpolation.
class GuidanceField {
 public:
  GuidanceField(const qm::WaveFunction& psi, const qm::HamiltonianSpec& h,
                double relative_node_threshold = kDefaultNodeThreshold);

  struct Sample {
    Velocity velocity{};
    double density = 0.0;
    bool resolved = false;
  };

  /// Never throws; `resolved` is false below the node threshold.
  Sample sample(std::span<const double> position) const noexcept;
  /// Throws NodeProximity below the node threshold.
  Velocity velocity(std::span<const double> position) const;

  /// Velocity at every grid point, flat index p * dimension + axis; NaN below threshold.
  std::vector<double> grid_velocities() const;

  double time() const noexcept { return time_; }
  /// Absolute density threshold in use.
  double threshold() const noexcept { return threshold_; }
  const qm::SpatialGrid& grid() const noexcept { return grid_; }

 private:
  Velocity combine(const std::array<Complex, 2>* numerators, double density,
                   std::span<const double> position) const noexcept;

  qm::SpatialGrid grid_;
  int components_;
  int dim_;
  double hbar_;
  std::array<double, 2> masses_{};
  std::optional<qm::MomentumCoupling> coupling_;
  double time_;
  double threshold_;
  // Per amplitude index: psi, d0 psi, d1 psi.
  std::vector<std::array<Complex, 3>> table_;
};

/// Single-point convenience wrapper around GuidanceField.
Velocity guidance_velocity(const qm::WaveFunction& psi, const qm::HamiltonianSpec& h,
                           std::span<const double> position,
                           double relative_node_threshold = kDefaultNodeThreshold);

/// Spectral (periodic) or sine-series (hard-wall) derivative of a grid field along one axis.
std::vector<Complex> grid_derivative(const qm::SpatialGrid& grid, std::span<const Complex> field,
                                     int axis);

}  // namespace pilot::bohm
