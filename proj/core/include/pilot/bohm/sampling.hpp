#pragma once

#include <cstddef>
#include <cstdint>

#include "pilot/bohm/ensemble.hpp"
#include "pilot/qm/wavefunction.hpp"

namespace pilot::bohm {

/// Draws `count` configurations from |psi|^2: inverse CDF over grid cells, then a uniform
/// offset inside the cell. Member i uses the random stream (seed, i).
TrajectoryEnsemble sample_born(const qm::WaveFunction& psi, std::size_t count, std::uint64_t seed);

}  // namespace pilot::bohm
