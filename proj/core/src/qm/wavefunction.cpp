#include "pilot/qm/wavefunction.hpp"

#include <cmath>

#include "pilot/error.hpp"

namespace pilot::qm {

WaveFunction::WaveFunction(SpatialGrid grid, int components, double time)
    : grid_(std::move(grid)), components_(components), time_(time) {
  if (components < 1) throw InvalidInput("wavefunction needs at least one component");
  amplitudes_.assign(grid_.size() * static_cast<std::size_t>(components), Complex{});
}

WaveFunction::WaveFunction(SpatialGrid grid, int components, std::vector<Complex> amplitudes,
                           double time)
    : grid_(std::move(grid)), components_(components), amplitudes_(std::move(amplitudes)),
      time_(time) {
  if (components < 1) throw InvalidInput("wavefunction needs at least one component");
  if (amplitudes_.size() != grid_.size() * static_cast<std::size_t>(components)) {
    throw ShapeMismatch("amplitude count does not match grid points x components");
  }
}

WaveFunction WaveFunction::from_function(const SpatialGrid& grid,
                                         const std::function<Complex(double, double)>& f,
                                         double time) {
  WaveFunction psi(grid, 1, time);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.point(p);
    psi(0, p) = f(x[0], x[1]);
  }
  return psi;
}

std::span<Complex> WaveFunction::component(int c) noexcept {
  return std::span<Complex>(amplitudes_).subspan(static_cast<std::size_t>(c) * grid_.size(),
                                                 grid_.size());
}

std::span<const Complex> WaveFunction::component(int c) const noexcept {
  return std::span<const Complex>(amplitudes_)
      .subspan(static_cast<std::size_t>(c) * grid_.size(), grid_.size());
}

std::vector<double> WaveFunction::density() const {
  std::vector<double> rho(grid_.size(), 0.0);
  for (int c = 0; c < components_; ++c) {
    const auto comp = component(c);
    for (std::size_t p = 0; p < rho.size(); ++p) rho[p] += std::norm(comp[p]);
  }
  return rho;
}

double WaveFunction::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum * grid_.measure());
}

WaveFunction& WaveFunction::normalize() {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("cannot normalize a zero or non-finite state");
  for (auto& a : amplitudes_) a /= n;
  return *this;
}

bool WaveFunction::finite() const noexcept {
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  }
  return true;
}

}  // namespace pilot::qm
