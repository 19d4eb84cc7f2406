#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pilot/field/trajectory.hpp"
#include "pilot/lattice/gaussian.hpp"

namespace pilot::field {

inline constexpr std::size_t kFieldHistogramBins = 32;

struct ModeMoments {
  std::size_t mode = 0;
  double mean = 0.0;
  double expected_mean = 0.0;
  /// (mean - expected) / sqrt(expected_variance / M).
  double mean_z = 0.0;
  double variance = 0.0;
  double expected_variance = 0.0;
  /// |variance - expected| / expected.
  double variance_mismatch = 0.0;
  /// L1 between the binned marginal and the Born Gaussian over +-4 sigma.
  double l1 = 0.0;
};

struct FieldEquivarianceStats {
  std::vector<ModeMoments> modes;
  std::size_t members = 0;
  std::size_t flagged = 0;
  double time = 0.0;
  std::vector<std::string> warnings;

  double max_mean_z() const noexcept;
  double max_variance_mismatch() const noexcept;
  double max_l1() const noexcept;
  /// Sampling-noise bound on the relative variance mismatch: 3 sqrt(2 / M).
  double variance_bound() const noexcept;
  /// Every mode within 3 sigma on the mean and the chi-square bound on the variance.
  bool within_noise() const noexcept;
};

/// Exact independent per-mode samples of |Psi|^2 (zero-frequency modes stay at Q = 0).
FieldEnsemble sample_field_ensemble(const lattice::GaussianWavefunctional& psi, std::size_t count,
                                    std::uint64_t seed);

/// Compares the empirical per-mode moments of an ensemble with the Born moments of psi.
FieldEquivarianceStats field_moments(const FieldEnsemble& ensemble, const lattice::GaussianWavefunctional& psi,
                                     std::size_t bins = kFieldHistogramBins);

/// Samples M configurations from |Psi_0|^2, guides them to time t and compares with |Psi(t)|^2.
FieldEquivarianceStats field_equivariance(const lattice::GaussianWavefunctional& psi0, std::size_t members,
                                          std::uint64_t seed, double t, double dt = 0.05,
                                          const FieldTrajectoryOptions& options = {});

/// Same comparison for a caller-supplied initial ensemble.
FieldEquivarianceStats field_equivariance(const lattice::GaussianWavefunctional& psi0, FieldEnsemble ensemble,
                                          double t, double dt = 0.05, const FieldTrajectoryOptions& options = {});

}  // namespace pilot::field
