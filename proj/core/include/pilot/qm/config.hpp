#pragma once

#include <ostream>

#include "pilot/io.hpp"
#include "pilot/qm/grid.hpp"
#include "pilot/qm/hamiltonian.hpp"
#include "pilot/qm/wavefunction.hpp"

namespace pilot::qm {

/// {"dimension": 1, "points_per_axis": 128, "spacing": 0.1, "boundary": "periodic",
///  "point_cap": 4194304}
SpatialGrid grid_from_json(const io::Json& j);

/// {"masses": [1.0], "hbar": 1.0,
///  "potential": {"type": "zero" | "harmonic" | "values", "omega": 1, "center": 0, "values": [...]},
///  "internal_coupling": [[[re, im], ...], ...],
///  "momentum_coupling": {"source_axis": 0, "target_axis": 1, "strength": 1.0}}
HamiltonianSpec hamiltonian_from_json(const io::Json& j, const SpatialGrid& grid, int components = 1);

/// CSV with columns x[,y],component,re,im; one row per (point, component).
void write_wavefunction_csv(std::ostream& out, const WaveFunction& psi);

}  // namespace pilot::qm
