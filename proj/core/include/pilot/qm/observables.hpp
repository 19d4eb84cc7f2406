#pragma once

#include <span>

#include "pilot/qm/hamiltonian.hpp"
#include "pilot/qm/wavefunction.hpp"

namespace pilot::qm {

/// sum_p |psi(p)|^2 * observable(p) * measure. Throws ShapeMismatch on size mismatch.
double expectation(const WaveFunction& psi, std::span<const double> observable);

/// <H> with the same spectral kinetic operator the propagators use.
double energy(const WaveFunction& psi, const HamiltonianSpec& h);

/// Position mean and standard deviation of |psi|^2 along one axis.
struct Moments {
  double mean;
  double stddev;
};
Moments position_moments(const WaveFunction& psi, int axis = 0);

/// <phi|psi> in grid quadrature, summed over components.
Complex overlap(const WaveFunction& phi, const WaveFunction& psi);

}  // namespace pilot::qm
