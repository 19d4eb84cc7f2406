#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pilot/qm/grid.hpp"

namespace pilot::qm {

using Complex = std::complex<double>;

/// Complex amplitudes over grid points and internal (non-ontic) components.
///
/// Storage is component-major: amplitude(c, p) lives at c * grid.size() + p, so each
/// component is a contiguous field suitable for FFTs.
class WaveFunction {
 public:
  explicit WaveFunction(SpatialGrid grid, int components = 1, double time = 0.0);
  WaveFunction(SpatialGrid grid, int components, std::vector<Complex> amplitudes,
               double time = 0.0);

  /// Samples f(x0, x1) on every grid point of one component (x1 = 0 in 1D).
  static WaveFunction from_function(const SpatialGrid& grid,
                                    const std::function<Complex(double, double)>& f,
                                    double time = 0.0);

  const SpatialGrid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

  std::span<Complex> amplitudes() noexcept { return amplitudes_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> component(int c) noexcept;
  std::span<const Complex> component(int c) const noexcept;

  Complex& operator()(int c, std::size_t point) noexcept {
    return amplitudes_[static_cast<std::size_t>(c) * grid_.size() + point];
  }
  Complex operator()(int c, std::size_t point) const noexcept {
    return amplitudes_[static_cast<std::size_t>(c) * grid_.size() + point];
  }

  /// Component-summed |psi|^2 at every grid point.
  std::vector<double> density() const;
  /// Grid-quadrature L2 norm summed over components.
  double norm() const;
  /// Scales to unit norm; throws on a zero state.
  WaveFunction& normalize();
  bool finite() const noexcept;

 private:
  SpatialGrid grid_;
  int components_;
  std::vector<Complex> amplitudes_;
  double time_;
};

}  // namespace pilot::qm
