#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pilot/lattice/model.hpp"

namespace pilot::lattice {

using Complex = std::complex<double>;

/// Gaussian wavefunctional over mass-weighted mode coordinates q (unit mode mass):
///   Psi[q] = exp(L) prod_k exp(-Omega_k (q_k - Q_k)^2 / 2 hbar + i P_k (q_k - Q_k) / hbar)
/// with the coherent shift alpha_k = sqrt(omega_k / 2 hbar) (Q_k + i P_k / omega_k).
/// Zero-frequency modes are excluded: Psi does not depend on them and they stay static.
class GaussianWavefunctional {
 public:
  GaussianWavefunctional(const LatticeModel& model, std::vector<Complex> width,
                         std::vector<Complex> alpha, double time = 0.0);

  /// Omega_k = omega_k, alpha = 0.
  static GaussianWavefunctional ground(const LatticeModel& model);
  /// Omega_k = omega_k with the given shifts (mode order).
  static GaussianWavefunctional coherent(const LatticeModel& model, std::vector<Complex> alpha);

  const LatticeModel& model() const noexcept { return model_; }
  const ModeBasis& basis() const noexcept { return basis_; }
  const std::vector<double>& frequencies() const noexcept { return omega_; }
  const std::vector<Complex>& width() const noexcept { return width_; }
  const std::vector<Complex>& alpha() const noexcept { return alpha_; }
  double time() const noexcept { return time_; }
  /// Complex log prefactor L (normalization and accumulated phase).
  Complex log_prefactor() const noexcept { return log_prefactor_; }
  bool active(std::size_t mode) const noexcept { return omega_[mode] > 0.0; }
  std::size_t modes() const noexcept { return omega_.size(); }

  double centre_q(std::size_t mode) const noexcept;
  double centre_p(std::size_t mode) const noexcept;
  /// Born variance hbar / (2 Re Omega); 0 for excluded modes.
  double variance(std::size_t mode) const noexcept;

  Complex amplitude(const Eigen::VectorXd& q) const;
  /// d ln Psi / dq_k.
  Eigen::VectorXcd log_gradient(const Eigen::VectorXd& q) const;
  /// Mode-space guidance velocity hbar Im d ln Psi / dq = P_k - Im Omega_k (q_k - Q_k).
  Eigen::VectorXd velocity(const Eigen::VectorXd& q) const;

  /// Advances by dt in place. Without phase tracking the log prefactor keeps only the
  /// normalization, which is all guidance and sampling need.
  void advance(double dt, bool track_phase = true);

 private:
  LatticeModel model_;
  ModeBasis basis_;
  std::vector<double> omega_;
  std::vector<Complex> width_;
  std::vector<Complex> alpha_;
  Complex log_prefactor_{};
  double time_;
};

/// Closed-form evolution of every mode by t. Throws NonNormalizable if Re Omega <= 0.
GaussianWavefunctional evolve_gaussian(GaussianWavefunctional psi, double t);

}  // namespace pilot::lattice
