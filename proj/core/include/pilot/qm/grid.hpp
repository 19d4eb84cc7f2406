#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pilot::qm {

enum class Boundary { periodic, hard_wall };

inline constexpr std::size_t kDefaultPointCap = std::size_t{1} << 22;

/// Uniform cartesian grid centered on the origin.
///
/// Periodic grids place points at (i - n/2) * spacing and cover [-n/2, n/2) * spacing.
/// Hard-wall grids place interior points at (i - (n-1)/2) * spacing with the wavefunction
/// vanishing on the walls one spacing beyond the outermost points.
/// Flat index is row-major: axis 0 varies slowest.
class SpatialGrid {
 public:
  SpatialGrid(int dimension, std::size_t points_per_axis, double spacing,
              Boundary boundary = Boundary::periodic, std::size_t point_cap = kDefaultPointCap);

  int dimension() const noexcept { return dimension_; }
  std::size_t points_per_axis() const noexcept { return n_; }
  double spacing() const noexcept { return spacing_; }
  Boundary boundary() const noexcept { return boundary_; }
  bool periodic() const noexcept { return boundary_ == Boundary::periodic; }

  std::size_t size() const noexcept { return total_; }
  /// Volume element dx^dimension used for quadrature.
  double measure() const noexcept { return measure_; }

  double coordinate(std::size_t i) const noexcept;
  std::vector<double> axis() const;
  /// Lower/upper bound of the region trajectories may occupy.
  double lower() const noexcept;
  double upper() const noexcept;
  double length() const noexcept { return upper() - lower(); }

  std::array<std::size_t, 2> unflatten(std::size_t flat) const noexcept;
  std::size_t flatten(std::size_t i0, std::size_t i1 = 0) const noexcept;
  /// Coordinates of a flat index, one per axis.
  std::array<double, 2> point(std::size_t flat) const noexcept;

  /// Angular wavenumbers of the discrete Fourier basis in FFT order.
  std::vector<double> wavenumbers() const;

  /// Map a coordinate back into [lower, upper) on periodic grids; identity otherwise.
  double wrap(double x) const noexcept;
  bool contains(std::span<const double> position) const noexcept;

  bool operator==(const SpatialGrid& other) const noexcept;

 private:
  int dimension_;
  std::size_t n_;
  double spacing_;
  Boundary boundary_;
  std::size_t total_;
  double measure_;
};

}  // namespace pilot::qm
