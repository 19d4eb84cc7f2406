#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pilot/qm/wavefunction.hpp"

namespace pilot::bohm {

/// Required distance between pointer branches, in pointer widths.
inline constexpr double kRequiredBranchSeparation = 5.0;

/// Von Neumann measurement: H = p_x^2/2m + p_y^2/2M + g x p_y on a 2D periodic grid whose
/// axis 0 is the system and axis 1 the pointer, both with the system grid's points and
/// spacing. The pointer starts as a real Gaussian centred on 0.
struct PointerConfig {
  double coupling = 1.0;
  double duration = 1.0;
  double dt = 0.01;
  double system_mass = 1.0;
  double pointer_mass = 100.0;
  double pointer_width = 0.5;
  double hbar = 1.0;
  std::size_t runs = 10000;
  std::uint64_t seed = 0;
};

struct PointerResult {
  /// Outcome 0: final pointer coordinate < 0; outcome 1: >= 0.
  std::vector<double> frequencies;
  std::vector<std::size_t> counts;
  /// Born weights of each outcome read from the pointer marginal of psi(T).
  std::vector<double> born;
  /// Distance between branch centroids in pointer widths.
  double separation = 0.0;
  double pointer_width = 0.0;
  std::size_t runs = 0;
  std::size_t flagged = 0;
  std::vector<double> final_pointer;
};

/// Couples a 1D system state to the pointer, integrates `runs` joint Bohmian trajectories
/// drawn from |psi(0)|^2 and records the sign of each final pointer position. Throws
/// InconclusiveMeasurement when the branches end closer than kRequiredBranchSeparation widths.
PointerResult pointer_measurement(const qm::WaveFunction& system_psi, const PointerConfig& config);

}  // namespace pilot::bohm
