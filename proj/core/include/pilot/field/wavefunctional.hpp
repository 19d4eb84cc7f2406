#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pilot/lattice/fock.hpp"
#include "pilot/lattice/gaussian.hpp"
#include "pilot/lattice/model.hpp"

namespace pilot::field {

using lattice::Complex;

/// Field configuration Phi(x) on the lattice sites at one time.
struct FieldConfiguration {
  Eigen::VectorXd values;
  double time = 0.0;

  /// Throws InvalidInput on non-finite values or a length different from the model's sites.
  void validate(const lattice::LatticeModel& model) const;
};

/// Normalized Hermite function of a unit-mass oscillator and its derivative.
void hermite_functions(unsigned n_max, double omega, double hbar, double q, std::vector<double>& h,
                       std::vector<double>& dh);

/// Finite superposition of Fock states over the lattice modes:
///   Psi[q, t] = sum_n c_n exp(-i E_n t / hbar) prod_k h_{n_k}(q_k).
class FockSuperposition {
 public:
  struct Term {
    lattice::FockState state;
    Complex coefficient;
  };

  /// Normalizes the coefficients. Throws ZeroMode if any mode has zero frequency.
  FockSuperposition(const lattice::LatticeModel& model, std::vector<Term> terms, double time = 0.0);

  const lattice::LatticeModel& model() const noexcept { return model_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const std::vector<double>& frequencies() const noexcept { return omega_; }
  double time() const noexcept { return time_; }
  /// Vacuum peak density prod_k sqrt(omega_k / pi hbar); node thresholds are relative to it.
  double reference_density() const noexcept { return reference_density_; }

  /// Psi and dPsi/dq_k at mode coordinates q and absolute time t.
  Complex amplitude(const Eigen::VectorXd& q, double t, Eigen::VectorXcd* gradient = nullptr) const;

 private:
  lattice::LatticeModel model_;
  std::vector<Term> terms_;
  std::vector<double> omega_;
  std::vector<double> energy_;
  unsigned n_max_ = 0;
  double time_;
  double reference_density_ = 1.0;
};

/// Wavefunctional with internal (non-ontic) components, each a linear combination of shared
/// Gaussian branches: Psi_chi = sum_j C(chi, j) G_j.
class MultiComponentWavefunctional {
 public:
  MultiComponentWavefunctional(std::vector<lattice::GaussianWavefunctional> branches,
                               Eigen::MatrixXcd coefficients);

  std::size_t components() const noexcept { return static_cast<std::size_t>(coefficients_.rows()); }
  const lattice::LatticeModel& model() const noexcept { return branches_.front().model(); }
  const std::vector<lattice::GaussianWavefunctional>& branches() const noexcept { return branches_; }
  const Eigen::MatrixXcd& coefficients() const noexcept { return coefficients_; }

  /// New component basis Psi'_chi = sum U(chi, chi') Psi_chi'.
  MultiComponentWavefunctional rotated(const Eigen::MatrixXcd& unitary) const;

  /// Component amplitude and its mode gradient at the branches' common time.
  Complex amplitude(std::size_t component, const Eigen::VectorXd& q,
                    Eigen::VectorXcd* gradient = nullptr) const;

  /// Evolves every branch by dt (coefficients are constant).
  void advance(double dt);

 private:
  std::vector<lattice::GaussianWavefunctional> branches_;
  Eigen::MatrixXcd coefficients_;
};

}  // namespace pilot::field
