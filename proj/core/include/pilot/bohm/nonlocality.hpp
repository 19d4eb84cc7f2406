#pragma once

#include "pilot/qm/hamiltonian.hpp"
#include "pilot/qm/wavefunction.hpp"

namespace pilot::bohm {

/// |v1(x1, x2 + delta) - v1(x1, x2)| / delta for a two-particle state on a 2D grid
/// (axis 0 is particle 1). Throws NodeProximity if either point is near a node.
double nonlocality_probe(const qm::WaveFunction& psi, const qm::HamiltonianSpec& h, double x1,
                         double x2, double delta);

}  // namespace pilot::bohm
