#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "pilot/bohm/integrator.hpp"
#include "pilot/field/guidance.hpp"
#include "pilot/field/wavefunctional.hpp"

namespace pilot::field {

struct FieldTrajectoryOptions {
  /// Multiplies the guidance velocity; -1 reverses the law (negative control).
  double guidance_sign = 1.0;
  /// Record every n-th step (0: initial and final only).
  std::size_t record_every = 1;
};

struct FieldTrajectory {
  std::vector<FieldConfiguration> history;
  bool flagged = false;
  std::size_t retried = 0;
  std::vector<std::string> warnings;
};

/// RK4 in mode space with stages at t, t + dt/2, t + dt. A node hit is retried with four dt/4
/// steps; a second failure flags the trajectory and freezes it. A negative dt integrates backwards.
FieldTrajectory integrate_field_trajectory(const FieldDynamics& dynamics, const FieldConfiguration& phi0,
                                           double dt, std::size_t steps,
                                           const FieldTrajectoryOptions& options = {});

/// Mode-space ensemble; members are rows of the returned matrices' column layout (modes x members).
struct FieldEnsemble {
  Eigen::MatrixXd modes;
  double time = 0.0;
  std::vector<bool> flagged;
  std::size_t retried = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(modes.cols()); }
  std::size_t flagged_count() const noexcept;
};

void advance_field_ensemble(const FieldDynamics& dynamics, FieldEnsemble& ensemble, double dt,
                            std::size_t steps, const FieldTrajectoryOptions& options = {});

/// Reference run on the gridded site wavefunction (N <= 2) with qm-core trajectories.
std::vector<FieldConfiguration> grid_field_trajectory(const FockSuperposition& psi, const qm::SpatialGrid& grid,
                                                      const FieldConfiguration& phi0, double dt,
                                                      std::size_t steps, std::size_t substeps = 1);

/// Site Hamiltonian of the lattice model on a grid over site coordinates.
qm::HamiltonianSpec site_hamiltonian(const lattice::LatticeModel& model, const qm::SpatialGrid& grid);

}  // namespace pilot::field
