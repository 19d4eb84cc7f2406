#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>

#include "pilot/bohm/guidance.hpp"
#include "pilot/field/wavefunctional.hpp"
#include "pilot/qm/wavefunction.hpp"

namespace pilot::field {

/// Guidance in mass-weighted mode coordinates: dq_k/dt = hbar Im(dPsi/dq_k / Psi), summed over
/// internal components. Site velocities follow from dPhi/dt = U^T (dq/dt) / sqrt(M), which is
/// (hbar / M) Im(dPsi/dPhi_x / Psi), i.e. the lattice functional derivative (1/a) d/dPhi_x for
/// the scalar field.
class FieldDynamics {
 public:
  virtual ~FieldDynamics() = default;
  virtual const lattice::LatticeModel& model() const noexcept = 0;
  virtual double start_time() const noexcept = 0;
  /// Mode velocity at absolute time t. Returns false when |Psi|^2 is below the node threshold;
  /// `density` receives |Psi|^2 either way.
  virtual bool mode_velocity(const Eigen::VectorXd& q, double t, Eigen::VectorXd& v,
                             double& density) const = 0;
  /// Whether Psi(t) is the same up to phase for every t (stationary state).
  virtual bool stationary() const noexcept = 0;

  using Velocity = std::function<bool(const Eigen::VectorXd& q, Eigen::VectorXd& v, double& density)>;
  /// Velocity field frozen at time t; implementations may cache a snapshot.
  virtual Velocity at_time(double t) const {
    return [this, t](const Eigen::VectorXd& q, Eigen::VectorXd& v, double& density) {
      return mode_velocity(q, t, v, density);
    };
  }
};

class GaussianDynamics final : public FieldDynamics {
 public:
  explicit GaussianDynamics(lattice::GaussianWavefunctional psi0) : psi0_(std::move(psi0)) {}
  const lattice::LatticeModel& model() const noexcept override { return psi0_.model(); }
  double start_time() const noexcept override { return psi0_.time(); }
  bool mode_velocity(const Eigen::VectorXd& q, double t, Eigen::VectorXd& v,
                     double& density) const override;
  bool stationary() const noexcept override;
  Velocity at_time(double t) const override;
  /// Psi advanced to absolute time t without phase tracking.
  lattice::GaussianWavefunctional at(double t) const;

 private:
  lattice::GaussianWavefunctional psi0_;
};

class FockDynamics final : public FieldDynamics {
 public:
  explicit FockDynamics(FockSuperposition psi, double relative_node_threshold = bohm::kDefaultNodeThreshold)
      : psi_(std::move(psi)), threshold_(relative_node_threshold * psi_.reference_density()) {}
  const lattice::LatticeModel& model() const noexcept override { return psi_.model(); }
  double start_time() const noexcept override { return psi_.time(); }
  bool mode_velocity(const Eigen::VectorXd& q, double t, Eigen::VectorXd& v,
                     double& density) const override;
  bool stationary() const noexcept override;
  const FockSuperposition& state() const noexcept { return psi_; }

 private:
  FockSuperposition psi_;
  double threshold_;
};

class TracedDynamics final : public FieldDynamics {
 public:
  explicit TracedDynamics(MultiComponentWavefunctional psi0,
                          double relative_node_threshold = bohm::kDefaultNodeThreshold);
  const lattice::LatticeModel& model() const noexcept override { return psi0_.model(); }
  double start_time() const noexcept override { return psi0_.branches().front().time(); }
  bool mode_velocity(const Eigen::VectorXd& q, double t, Eigen::VectorXd& v,
                     double& density) const override;
  bool stationary() const noexcept override { return false; }

 private:
  MultiComponentWavefunctional psi0_;
  double threshold_;
};

/// Site velocities dPhi_x/dt for a configuration at the state's own time.
/// Throws NodeProximity below the node threshold.
Eigen::VectorXd field_guidance_velocity(const lattice::GaussianWavefunctional& psi,
                                        const FieldConfiguration& phi);
Eigen::VectorXd field_guidance_velocity(const FockSuperposition& psi, const FieldConfiguration& phi);
/// Gridded wavefunctional over site coordinates (N <= 2, grid dimension N).
Eigen::VectorXd field_guidance_velocity(const lattice::LatticeModel& model,
                                        const qm::WaveFunction& site_psi,
                                        const FieldConfiguration& phi);
/// Mode velocities from any dynamics at time t; throws NodeProximity.
Eigen::VectorXd field_mode_velocity(const FieldDynamics& dynamics, const Eigen::VectorXd& q, double t);

/// Guidance with traced internal components: numerator and denominator summed over chi.
Eigen::VectorXd traced_nonontic_demo(const MultiComponentWavefunctional& psi,
                                     const FieldConfiguration& phi);

/// Gridded site-coordinate copy of a Fock superposition (N <= 2) sampled at time t.
qm::WaveFunction site_grid_wavefunction(const FockSuperposition& psi, const qm::SpatialGrid& grid,
                                        double t);

}  // namespace pilot::field
