#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "pilot/fft.hpp"
#include "pilot/qm/hamiltonian.hpp"
#include "pilot/qm/operators.hpp"
#include "pilot/qm/wavefunction.hpp"

namespace pilot::qm {

/// Second-order Strang splitting exp(-iV dt/2) exp(-iT dt) exp(-iV dt/2) with a spectral
/// kinetic step. Periodic grids only.
///
/// A momentum coupling g x_s p_t is folded into the kinetic part as
/// exp(-iT_s dt/2) exp(-i(T_t + g x_s p_t) dt) exp(-iT_s dt/2), each factor diagonal in a
/// mixed position/momentum representation.
class SplitStepPropagator {
 public:
  SplitStepPropagator(const SpatialGrid& grid, int components, const HamiltonianSpec& h, double dt);

  void step(WaveFunction& psi) const;
  /// Applies `steps` steps; throws DivergedEvolution on a non-finite amplitude.
  void advance(WaveFunction& psi, std::size_t steps) const;

  double dt() const noexcept { return dt_; }
  const SpatialGrid& grid() const noexcept { return grid_; }

 private:
  void apply_potential_half(WaveFunction& psi) const;

  SpatialGrid grid_;
  int components_;
  double dt_;
  std::vector<Complex> half_potential_;
  std::optional<Eigen::MatrixXcd> half_internal_;
  std::vector<Complex> kinetic_phase_;
  std::unique_ptr<FftPlan> full_plan_;
  // Momentum-coupling path.
  int source_axis_ = 0;
  int target_axis_ = 1;
  std::vector<Complex> source_half_phase_;
  std::vector<Complex> target_phase_;
  std::unique_ptr<FftPlan> source_plan_;
  std::unique_ptr<FftPlan> target_plan_;
};

/// Exact propagation exp(-iH dt/hbar) through the dense eigenbasis of H. Any boundary;
/// dimension limited by the dense cap.
class EigenbasisPropagator {
 public:
  EigenbasisPropagator(const SpatialGrid& grid, int components, const HamiltonianSpec& h, double dt,
                       std::size_t cap = kDefaultDenseCap);

  void step(WaveFunction& psi) const;
  void advance(WaveFunction& psi, std::size_t steps) const;
  double dt() const noexcept { return dt_; }

 private:
  SpatialGrid grid_;
  int components_;
  double dt_;
  Eigen::MatrixXcd step_operator_;
};

/// Split-step evolution; throws UnsupportedConfiguration on non-periodic grids.
WaveFunction evolve_split_step(WaveFunction psi, const HamiltonianSpec& h, double dt,
                               std::size_t steps);

WaveFunction evolve_eigenbasis(WaveFunction psi, const HamiltonianSpec& h, double dt,
                               std::size_t steps, std::size_t cap = kDefaultDenseCap);

/// Split-step on periodic grids, eigenbasis propagation on hard-wall grids.
WaveFunction evolve(WaveFunction psi, const HamiltonianSpec& h, double dt, std::size_t steps);

}  // namespace pilot::qm
