#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "pilot/bohm/ensemble.hpp"
#include "pilot/bohm/guidance.hpp"
#include "pilot/qm/hamiltonian.hpp"
#include "pilot/qm/wavefunction.hpp"

namespace pilot::bohm {

/// Fraction of unresolved members above which a statistics-quality warning is raised.
inline constexpr double kFlaggedWarningFraction = 1e-3;

struct IntegrationOptions {
  /// Wavefunction steps per half trajectory step.
  std::size_t substeps = 1;
  double node_threshold = kDefaultNodeThreshold;
  /// Record every n-th step (0: initial and final only).
  std::size_t record_every = 0;
  /// Members recorded: the first n.
  std::size_t record_members = std::numeric_limits<std::size_t>::max();
};

/// RK4 integration of the guidance equation with the wavefunction advanced alongside.
/// Stages use snapshots at t, t + dt/2 and t + dt. A member that meets a node is retried
/// with four dt/4 steps on finer snapshots, then flagged and frozen.
class BohmIntegrator {
 public:
  BohmIntegrator(qm::WaveFunction psi0, qm::HamiltonianSpec h, double dt,
                 IntegrationOptions options = {});
  ~BohmIntegrator();
  BohmIntegrator(BohmIntegrator&&) noexcept;
  BohmIntegrator& operator=(BohmIntegrator&&) noexcept;

  /// Advances psi and every active member by dt. The ensemble time must match psi.
  void step(TrajectoryEnsemble& ensemble);

  const qm::WaveFunction& psi() const noexcept { return psi_; }
  const GuidanceField& field() const noexcept { return *current_; }
  double time() const noexcept { return psi_.time(); }
  double dt() const noexcept { return dt_; }
  /// Members that needed the dt/4 retry, cumulative.
  std::size_t retried() const noexcept { return retried_; }

 private:
  struct Stepper;
  void advance_psi(qm::WaveFunction& psi, const Stepper& s, std::size_t steps) const;
  const Stepper& fine_stepper();

  qm::WaveFunction psi_;
  qm::HamiltonianSpec h_;
  double dt_;
  IntegrationOptions options_;
  std::unique_ptr<Stepper> stepper_;
  std::unique_ptr<Stepper> fine_;
  std::unique_ptr<GuidanceField> current_;
  std::size_t retried_ = 0;
};

struct IntegrationResult {
  TrajectoryEnsemble ensemble;
  qm::WaveFunction psi;
  TrajectoryRecord record;
  std::size_t retried = 0;
  std::size_t flagged = 0;
  std::vector<std::string> warnings;
};

/// Integrates `steps` steps of size dt starting from ensemble0 (which must share psi0's time).
IntegrationResult integrate_trajectories(const qm::WaveFunction& psi0, const qm::HamiltonianSpec& h,
                                         const TrajectoryEnsemble& ensemble0, double dt,
                                         std::size_t steps, const IntegrationOptions& options = {});

}  // namespace pilot::bohm
