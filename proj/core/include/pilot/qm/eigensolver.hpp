#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "pilot/qm/hamiltonian.hpp"
#include "pilot/qm/operators.hpp"
#include "pilot/qm/wavefunction.hpp"

namespace pilot::qm {

struct EigenPair {
  double energy;
  WaveFunction state;
};

/// Lowest `count` eigenpairs of the dense grid Hamiltonian, energies ascending,
/// states normalized in grid quadrature. This is the reference oracle used across the
/// library, so it deliberately avoids every shortcut the fast paths take.
std::vector<EigenPair> brute_force_eigens(const SpatialGrid& grid, int components,
                                          const HamiltonianSpec& h, std::size_t count,
                                          std::size_t cap = kDefaultDenseCap);

/// Lowest `count` eigenvalues of a real symmetric matrix (ascending).
std::vector<double> lowest_eigenvalues(const Eigen::MatrixXd& m, std::size_t count);

}  // namespace pilot::qm
