#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pilot/bohm/ensemble.hpp"

namespace pilot::bohm {

/// Particle two-slit setup on a square periodic grid. Axis 0 is transverse (x), axis 1 is
/// the propagation direction (y). A barrier of height `barrier_height` fills
/// |y| < barrier_thickness / 2 except for the open slits centred at x = -+slit_separation / 2.
/// An absorbing ramp -iW starts at |x|, |y| > absorber_start.
struct TwoSlitConfig {
  std::size_t points = 256;
  double spacing = 0.35;
  double mass = 1.0;
  double hbar = 1.0;
  double wavenumber = 3.0;
  double packet_width_x = 4.0;
  double packet_width_y = 4.0;
  double packet_start_y = -12.0;
  double slit_separation = 6.0;
  double slit_width = 1.5;
  bool left_open = true;
  bool right_open = true;
  double barrier_height = 60.0;
  double barrier_thickness = 1.0;
  double absorber_start = 34.0;
  double absorber_strength = 5.0;
  double screen_y = 25.0;
  double screen_half_width = 32.0;
  std::size_t bins = 64;
  double dt = 0.02;
  std::size_t substeps = 1;
  double max_time = 20.0;
  std::size_t members = 40000;
  /// Arrival fraction below which the run counts as timed out.
  double min_arrival_fraction = 0.05;
  std::size_t bundle_size = 64;
  std::size_t record_every = 5;
  std::uint64_t seed = 0;
};

struct FringeMinimum {
  std::size_t bin = 0;
  double contrast = 0.0;
};

struct TwoSlitResult {
  double bin_lower = 0.0;
  double bin_upper = 0.0;
  std::vector<std::size_t> counts;
  std::vector<double> arrival_x;
  std::size_t arrivals = 0;
  std::size_t members = 0;
  std::size_t absorbed = 0;
  std::size_t flagged = 0;
  double final_time = 0.0;
  /// Members whose x changed sign at any step.
  std::size_t axis_crossings = 0;
  /// sum |h_i - h_mirror(i)| / sum h_i.
  double symmetry_l1 = 0.0;
  std::vector<FringeMinimum> minima;
  bool antithetic = false;
  /// Bundle of recorded trajectories; slit[i] is -1 (left), +1 (right) or 0 (never passed).
  TrajectoryRecord bundle;
  std::vector<int> bundle_slit;
  std::vector<std::string> warnings;
};

/// Local histogram minima whose depth below the lower neighbouring peak exceeds three
/// Poisson standard deviations; contrast = (peak - h) / (peak + h).
std::vector<FringeMinimum> fringe_minima(const std::vector<std::size_t>& counts);

/// Runs the experiment. Members are sampled from |psi(0)|^2 (mirrored pairs when the setup
/// is symmetric), integrated until they cross the screen line, enter the absorber or time
/// runs out. Throws Timeout if fewer than min_arrival_fraction arrive.
TwoSlitResult two_slit_experiment(const TwoSlitConfig& config);

/// Minima with contrast above `contrast`.
std::size_t count_minima(const std::vector<FringeMinimum>& minima, double contrast);

}  // namespace pilot::bohm
