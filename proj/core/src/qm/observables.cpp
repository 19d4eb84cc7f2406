#include "pilot/qm/observables.hpp"

#include <cmath>

#include "pilot/error.hpp"
#include "pilot/fft.hpp"
#include "pilot/qm/operators.hpp"

namespace pilot::qm {

double expectation(const WaveFunction& psi, std::span<const double> observable) {
  if (observable.size() != psi.grid().size()) {
    throw ShapeMismatch("observable does not match the wavefunction grid");
  }
  double sum = 0.0;
  for (int c = 0; c < psi.components(); ++c) {
    const auto comp = psi.component(c);
    for (std::size_t p = 0; p < comp.size(); ++p) {
      if (!std::isfinite(observable[p])) throw InvalidInput("observable must be finite");
      sum += std::norm(comp[p]) * observable[p];
    }
  }
  return sum * psi.grid().measure();
}

double energy(const WaveFunction& psi, const HamiltonianSpec& h) {
  const auto& grid = psi.grid();
  h.validate(grid, psi.components());
  if (!grid.periodic()) {
    const Eigen::MatrixXcd ham = dense_hamiltonian(grid, psi.components(), h);
    const auto amps = psi.amplitudes();
    Eigen::Map<const Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
    return (v.adjoint() * ham * v)(0).real() * grid.measure();
  }

  const auto k = grid.wavenumbers();
  const std::size_t n = grid.points_per_axis();
  std::vector<std::size_t> shape(static_cast<std::size_t>(grid.dimension()), n);
  FftPlan plan(shape);
  double kinetic = 0.0;
  double coupling = 0.0;
  for (int c = 0; c < psi.components(); ++c) {
    std::vector<Complex> buf(psi.component(c).begin(), psi.component(c).end());
    plan.forward(buf);
    for (std::size_t p = 0; p < buf.size(); ++p) {
      const auto idx = grid.unflatten(p);
      double e = h.hbar * h.hbar * k[idx[0]] * k[idx[0]] / (2.0 * h.mass(0));
      if (grid.dimension() == 2) e += h.hbar * h.hbar * k[idx[1]] * k[idx[1]] / (2.0 * h.mass(1));
      kinetic += std::norm(buf[p]) * e;
    }
    if (h.momentum_coupling && h.momentum_coupling->strength != 0.0) {
      const auto& mc = *h.momentum_coupling;
      FftPlan target(shape, mc.target_axis);
      std::vector<Complex> mixed(psi.component(c).begin(), psi.component(c).end());
      target.forward(mixed);
      double local = 0.0;
      for (std::size_t p = 0; p < mixed.size(); ++p) {
        const auto idx = grid.unflatten(p);
        const std::size_t it = idx[static_cast<std::size_t>(mc.target_axis)];
        const double kt = (n % 2 == 0 && it == n / 2) ? 0.0 : k[it];
        const double xs = grid.coordinate(idx[static_cast<std::size_t>(mc.source_axis)]);
        local += std::norm(mixed[p]) * mc.strength * xs * h.hbar * kt;
      }
      coupling += local / static_cast<double>(n);
    }
  }
  kinetic *= grid.measure() / static_cast<double>(grid.size());
  coupling *= grid.measure();

  double potential = 0.0;
  if (!h.potential.empty()) potential = expectation(psi, h.potential);

  double internal = 0.0;
  if (h.internal_coupling) {
    const auto& cm = *h.internal_coupling;
    for (std::size_t p = 0; p < grid.size(); ++p) {
      for (int a = 0; a < psi.components(); ++a) {
        for (int b = 0; b < psi.components(); ++b) {
          internal += (std::conj(psi(a, p)) * cm(a, b) * psi(b, p)).real();
        }
      }
    }
    internal *= grid.measure();
  }
  return kinetic + potential + internal + coupling;
}

Moments position_moments(const WaveFunction& psi, int axis) {
  const auto& grid = psi.grid();
  const auto rho = psi.density();
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t p = 0; p < rho.size(); ++p) {
    const double x = grid.point(p)[static_cast<std::size_t>(axis)];
    m0 += rho[p];
    m1 += rho[p] * x;
    m2 += rho[p] * x * x;
  }
  const double mean = m1 / m0;
  return {mean, std::sqrt(std::max(0.0, m2 / m0 - mean * mean))};
}

Complex overlap(const WaveFunction& phi, const WaveFunction& psi) {
  if (!(phi.grid() == psi.grid()) || phi.components() != psi.components()) {
    throw ShapeMismatch("overlap of wavefunctions on different grids");
  }
  Complex s{};
  const auto a = phi.amplitudes();
  const auto b = psi.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s * psi.grid().measure();
}

}  // namespace pilot::qm
