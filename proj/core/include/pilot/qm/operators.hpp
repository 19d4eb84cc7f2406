#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "pilot/qm/grid.hpp"
#include "pilot/qm/hamiltonian.hpp"

namespace pilot::qm {

inline constexpr std::size_t kDefaultDenseCap = 4096;

/// Dense 1D kinetic matrix -(hbar^2/2m) d^2/dx^2 in the grid's spectral basis:
/// Fourier on periodic grids, sine series on hard-wall grids.
Eigen::MatrixXd kinetic_matrix_1d(const SpatialGrid& grid, double mass, double hbar);

/// Dense 1D first-derivative matrix in the same spectral basis (Nyquist mode dropped).
Eigen::MatrixXd derivative_matrix_1d(const SpatialGrid& grid);

/// Full Hamiltonian over (component, point) in WaveFunction storage order.
/// Throws SizeLimitExceeded above cap.
Eigen::MatrixXcd dense_hamiltonian(const SpatialGrid& grid, int components,
                                   const HamiltonianSpec& h, std::size_t cap = kDefaultDenseCap);

/// True when the dense Hamiltonian is real symmetric (no complex couplings).
bool hamiltonian_is_real(const HamiltonianSpec& h);

Eigen::MatrixXd dense_hamiltonian_real(const SpatialGrid& grid, int components,
                                       const HamiltonianSpec& h,
                                       std::size_t cap = kDefaultDenseCap);

}  // namespace pilot::qm
