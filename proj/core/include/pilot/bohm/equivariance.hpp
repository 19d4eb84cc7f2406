#pragma once

#include <cstddef>
#include <vector>

#include "pilot/bohm/ensemble.hpp"
#include "pilot/qm/wavefunction.hpp"

namespace pilot::bohm {

inline constexpr std::size_t kDefaultHistogramBins = 64;

struct EquivarianceStats {
  /// Sum over bins of |empirical fraction - Born probability|.
  double l1 = 0.0;
  /// Largest Kolmogorov-Smirnov distance over the 1D marginals.
  double ks = 0.0;
  std::vector<double> ks_per_axis;
  std::size_t members = 0;
};

/// Histogram of an ensemble against the Born probabilities of psi over the grid extent.
/// psi is treated as piecewise constant on grid cells. In 2D the `bins` budget is split as
/// round(sqrt(bins)) per axis. Frozen members are included.
EquivarianceStats equivariance_statistic(const TrajectoryEnsemble& ensemble,
                                         const qm::WaveFunction& psi,
                                         std::size_t bins = kDefaultHistogramBins);

struct Histogram1D {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> empirical;  // fractions of members
  std::vector<double> born;       // probabilities
};

/// Marginal histogram along one axis, used for output.
Histogram1D marginal_histogram(const TrajectoryEnsemble& ensemble, const qm::WaveFunction& psi,
                               int axis, std::size_t bins = kDefaultHistogramBins);

}  // namespace pilot::bohm
