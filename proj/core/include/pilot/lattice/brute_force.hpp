#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "pilot/lattice/model.hpp"
#include "pilot/qm/operators.hpp"

namespace pilot::lattice {

/// Per-site periodic position grid used by the brute-force oracle.
struct SiteGridOptions {
  /// 0: 64, 32, 16 points for N = 1, 2, 3.
  std::size_t points_per_site = 0;
  /// 0: sqrt(2 pi hbar / (n M omega_geo)), which balances position and momentum coverage.
  double spacing = 0.0;
  std::size_t cap = qm::kDefaultDenseCap;
};

struct FieldEigensystem {
  std::vector<double> energies;
  /// Columns are eigenvectors over the tensor grid (unit Euclidean norm); empty unless requested.
  Eigen::MatrixXd states;
  std::size_t points_per_site = 0;
  double spacing = 0.0;
  /// Site coordinate values of the per-site grid.
  std::vector<double> axis;
};

/// Dense diagonalization of the coupled-oscillator Hamiltonian over the tensor product of
/// per-site grids (site 0 slowest). Needs N <= 3; throws SizeLimitExceeded above the cap.
FieldEigensystem brute_force_field_eigensystem(const LatticeModel& model, std::size_t count,
                                               bool vectors, const SiteGridOptions& options = {});

/// Lowest `count` energies.
std::vector<double> brute_force_field_eigens(const LatticeModel& model, std::size_t count,
                                             const SiteGridOptions& options = {});

/// <0| phi_x(dt) phi_y(0) |0> summed over every computed eigenstate; x, y are site indices.
std::complex<double> brute_force_two_point(const LatticeModel& model, const FieldEigensystem& system,
                                           std::size_t x, std::size_t y, double dt);

}  // namespace pilot::lattice
