#pragma once

#include <complex>

#include "pilot/lattice/model.hpp"

namespace pilot::lattice {

struct CorrelatorOptions {
  /// Drop the zero mode of a model that has one; otherwise such models raise ZeroMode.
  bool exclude_zero_mode = false;
  /// Width s of a Gaussian resolution filter exp(-(k s)^2 / 2) on each mode; 0 disables it.
  double resolution = 0.0;
};

/// Vacuum Wightman function <0|phi(x1, t1) phi(x2, t2)|0> as the lattice mode sum
///   sum_k hbar / (2 N M omega_k) exp(i (k (x1 - x2) - omega_k (t1 - t2))),
/// with k folded into the first Brillouin zone so x may be any real position. The
/// zone-edge mode of an even lattice enters through cos(k dx).
std::complex<double> two_point_function(const LatticeModel& model, double x1, double t1, double x2,
                                        double t2, const CorrelatorOptions& options = {});

}  // namespace pilot::lattice
