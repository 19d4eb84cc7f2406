#include "pilot/qm/evolution.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "pilot/error.hpp"

namespace pilot::qm {

namespace {

constexpr std::size_t kMinEvolutionPoints = 8;

Eigen::MatrixXcd hermitian_exponential(const Eigen::MatrixXcd& m, double factor) {
  // exp(-i factor M) for Hermitian M.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, -factor * es.eigenvalues()(i));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

SplitStepPropagator::SplitStepPropagator(const SpatialGrid& grid, int components,
                                         const HamiltonianSpec& h, double dt)
    : grid_(grid), components_(components), dt_(dt) {
  if (!grid.periodic()) {
    throw UnsupportedConfiguration("spectral split-step requires a periodic grid");
  }
  if (grid.points_per_axis() < kMinEvolutionPoints) {
    throw InvalidInput("evolution grids need at least 8 points per axis");
  }
  if (!std::isfinite(dt)) throw InvalidInput("time step must be finite");
  h.validate(grid, components);

  const double hbar = h.hbar;
  half_potential_.resize(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const double damping = h.absorption.empty() ? 1.0 : std::exp(-h.absorption[p] * dt / (2.0 * hbar));
    half_potential_[p] = std::polar(damping, -h.potential_at(p) * dt / (2.0 * hbar));
  }
  if (h.internal_coupling) {
    half_internal_ = hermitian_exponential(*h.internal_coupling, dt / (2.0 * hbar));
  }

  const auto k = grid.wavenumbers();
  const std::size_t n = grid.points_per_axis();
  std::vector<std::size_t> shape(static_cast<std::size_t>(grid.dimension()), n);
  auto kinetic_rate = [&](int axis, double kv) { return hbar * kv * kv / (2.0 * h.mass(axis)); };

  if (h.momentum_coupling && h.momentum_coupling->strength != 0.0) {
    const auto& mc = *h.momentum_coupling;
    source_axis_ = mc.source_axis;
    target_axis_ = mc.target_axis;
    source_plan_ = std::make_unique<FftPlan>(shape, source_axis_);
    target_plan_ = std::make_unique<FftPlan>(shape, target_axis_);
    source_half_phase_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      source_half_phase_[j] = std::polar(1.0, -kinetic_rate(source_axis_, k[j]) * dt / 2.0);
    }
    // Indexed by (x_source, k_target) in the same flat layout as the grid.
    target_phase_.resize(grid.size());
    for (std::size_t i0 = 0; i0 < n; ++i0) {
      for (std::size_t i1 = 0; i1 < n; ++i1) {
        const std::size_t is = source_axis_ == 0 ? i0 : i1;
        const std::size_t it = target_axis_ == 0 ? i0 : i1;
        const double kt = k[it];
        const double kt_first = (n % 2 == 0 && it == n / 2) ? 0.0 : kt;
        const double rate = kinetic_rate(target_axis_, kt) + mc.strength * grid.coordinate(is) * kt_first;
        target_phase_[grid.flatten(i0, i1)] = std::polar(1.0, -rate * dt);
      }
    }
  } else {
    full_plan_ = std::make_unique<FftPlan>(shape);
    kinetic_phase_.resize(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) {
      const auto idx = grid.unflatten(p);
      double rate = kinetic_rate(0, k[idx[0]]);
      if (grid.dimension() == 2) rate += kinetic_rate(1, k[idx[1]]);
      kinetic_phase_[p] = std::polar(1.0, -rate * dt);
    }
  }
}

void SplitStepPropagator::apply_potential_half(WaveFunction& psi) const {
  const std::size_t npts = grid_.size();
  for (int c = 0; c < components_; ++c) {
    auto comp = psi.component(c);
    for (std::size_t p = 0; p < npts; ++p) comp[p] *= half_potential_[p];
  }
  if (half_internal_) {
    const auto& u = *half_internal_;
    std::vector<Complex> local(static_cast<std::size_t>(components_));
    for (std::size_t p = 0; p < npts; ++p) {
      for (int a = 0; a < components_; ++a) local[static_cast<std::size_t>(a)] = psi(a, p);
      for (int a = 0; a < components_; ++a) {
        Complex s{};
        for (int b = 0; b < components_; ++b) s += u(a, b) * local[static_cast<std::size_t>(b)];
        psi(a, p) = s;
      }
    }
  }
}

void SplitStepPropagator::step(WaveFunction& psi) const {
  if (!(psi.grid() == grid_) || psi.components() != components_) {
    throw ShapeMismatch("wavefunction does not match propagator grid");
  }
  apply_potential_half(psi);
  for (int c = 0; c < components_; ++c) {
    auto comp = psi.component(c);
    if (full_plan_) {
      full_plan_->forward(comp);
      for (std::size_t p = 0; p < comp.size(); ++p) comp[p] *= kinetic_phase_[p];
      full_plan_->inverse(comp);
    } else {
      auto source_kick = [&] {
        source_plan_->forward(comp);
        for (std::size_t p = 0; p < comp.size(); ++p) {
          const auto idx = grid_.unflatten(p);
          comp[p] *= source_half_phase_[idx[static_cast<std::size_t>(source_axis_)]];
        }
        source_plan_->inverse(comp);
      };
      source_kick();
      target_plan_->forward(comp);
      for (std::size_t p = 0; p < comp.size(); ++p) comp[p] *= target_phase_[p];
      target_plan_->inverse(comp);
      source_kick();
    }
  }
  apply_potential_half(psi);
  psi.set_time(psi.time() + dt_);
}

void SplitStepPropagator::advance(WaveFunction& psi, std::size_t steps) const {
  const double t0 = psi.time();
  for (std::size_t s = 0; s < steps; ++s) {
    step(psi);
    if (!psi.finite()) {
      throw DivergedEvolution("non-finite amplitude after step " + std::to_string(s + 1));
    }
  }
  // Avoid accumulated round-off in the clock.
  psi.set_time(t0 + static_cast<double>(steps) * dt_);
}

EigenbasisPropagator::EigenbasisPropagator(const SpatialGrid& grid, int components,
                                           const HamiltonianSpec& h, double dt, std::size_t cap)
    : grid_(grid), components_(components), dt_(dt) {
  const Eigen::MatrixXcd ham = dense_hamiltonian(grid, components, h, cap);
  step_operator_ = hermitian_exponential(ham, dt / h.hbar);
}

void EigenbasisPropagator::step(WaveFunction& psi) const {
  if (!(psi.grid() == grid_) || psi.components() != components_) {
    throw ShapeMismatch("wavefunction does not match propagator grid");
  }
  auto amps = psi.amplitudes();
  Eigen::Map<Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
  Eigen::VectorXcd next = step_operator_ * v;
  v = next;
  psi.set_time(psi.time() + dt_);
}

void EigenbasisPropagator::advance(WaveFunction& psi, std::size_t steps) const {
  const double t0 = psi.time();
  for (std::size_t s = 0; s < steps; ++s) {
    step(psi);
    if (!psi.finite()) {
      throw DivergedEvolution("non-finite amplitude after step " + std::to_string(s + 1));
    }
  }
  psi.set_time(t0 + static_cast<double>(steps) * dt_);
}

WaveFunction evolve_split_step(WaveFunction psi, const HamiltonianSpec& h, double dt,
                               std::size_t steps) {
  SplitStepPropagator prop(psi.grid(), psi.components(), h, dt);
  prop.advance(psi, steps);
  return psi;
}

WaveFunction evolve_eigenbasis(WaveFunction psi, const HamiltonianSpec& h, double dt,
                               std::size_t steps, std::size_t cap) {
  EigenbasisPropagator prop(psi.grid(), psi.components(), h, dt, cap);
  prop.advance(psi, steps);
  return psi;
}

WaveFunction evolve(WaveFunction psi, const HamiltonianSpec& h, double dt, std::size_t steps) {
  if (psi.grid().periodic()) return evolve_split_step(std::move(psi), h, dt, steps);
  return evolve_eigenbasis(std::move(psi), h, dt, steps);
}

}  // namespace pilot::qm
