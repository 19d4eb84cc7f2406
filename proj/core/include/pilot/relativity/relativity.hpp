#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pilot/field/equivariance.hpp"
#include "pilot/io.hpp"
#include "pilot/lattice/correlator.hpp"
#include "pilot/lattice/model.hpp"

namespace pilot::relativity {

/// Lorentz boost with the sound speed in place of c. The primed frame moves with velocity v
/// relative to the unprimed one: x' = gamma (x - v t), t' = gamma (t - v x / c_s^2).
class SoundBoost {
 public:
  /// Throws InvalidInput unless |v| < c_s and c_s > 0.
  SoundBoost(double velocity, double sound_speed);

  double velocity() const noexcept { return v_; }
  double sound_speed() const noexcept { return cs_; }
  double gamma() const noexcept { return gamma_; }

  struct Event {
    double x = 0.0;
    double t = 0.0;
  };
  Event apply(const Event& e) const noexcept;
  Event inverse(const Event& e) const noexcept;
  /// First this boost, then `next`: velocity addition (u + v) / (1 + u v / c_s^2).
  SoundBoost then(const SoundBoost& next) const;

 private:
  double v_;
  double cs_;
  double gamma_;
};

struct DispersionScan {
  std::vector<double> ka;
  /// |omega / (c_s k) - 1| at each ka.
  std::vector<double> deviation;
  double max_deviation = 0.0;
  bool monotone = true;
};

/// Deviation profile over 0 < k a <= k_cut a on `samples` evenly spaced points. Requires a
/// gapless model (no pinning, no field mass); throws InvalidInput otherwise.
DispersionScan dispersion_linearity_scan(const lattice::LatticeModel& model, double k_cut, std::size_t samples = 256);

struct EventPair {
  SoundBoost::Event first;
  SoundBoost::Event second;
};

struct CorrelatorRow {
  EventPair original;
  EventPair boosted;
  std::complex<double> w_original;
  std::complex<double> w_boosted;
  double relative_deviation = 0.0;
};

struct BoostInvarianceReport {
  std::vector<CorrelatorRow> rows;
  double max_relative_deviation = 0.0;

  io::Json to_json() const;
};

/// Validity window: spatial separations at least this many spacings.
inline constexpr double kMinSeparationSpacings = 4.0;
/// Light-cone extent |dx| + c_s |dt| at most this fraction of the ring.
inline constexpr double kMaxRingFraction = 0.25;
inline constexpr double kMaxBoostFraction = 0.5;

/// Relative deviation |W(boosted pair) - W(pair)| / |W(pair)| for every pair. Throws OutOfRange
/// when |v| > c_s / 2 or a pair (original or boosted) leaves the validity window.
BoostInvarianceReport boost_invariance_correlator(const lattice::LatticeModel& model, const std::vector<EventPair>& pairs,
                                                  const SoundBoost& boost,
                                                  const lattice::CorrelatorOptions& options = {});

/// Equal-time pair at +-separation/2 around the origin.
EventPair equal_time_pair(double separation, double time = 0.0);

struct Threshold {
  std::string name;
  double value = 0.0;
  /// Provenance label of the threshold value.
  std::string provenance;
};

struct FrameReportConfig {
  // Preferred-frame equivariance (Bohmian statistics equal the Born statistics in S0).
  std::size_t field_sites = 8;
  double field_spacing = 1.0;
  double field_mass = 0.5;
  std::complex<double> coherent_shift{1.0, -0.5};
  std::size_t members = 20000;
  double time = 2.5;
  double dt = 0.05;
  double guidance_sign = 1.0;
  std::uint64_t seed = 0;
  // Frame independence of the standard predictions (vacuum two-point function).
  double boost_velocity = 0.3;
  std::size_t correlator_sites = 256;
  double correlator_spacing = 1.0;
  double correlator_mass = 0.05;
  double separation = 32.0;
  /// Resolution filter width in lattice spacings (scales with refinement).
  double resolution_spacings = 2.0;
  double correlator_bound = 0.05;
  /// Refinement check: twice the sites at half the spacing must lower the deviation.
  bool refine = true;
};

struct FrameReport {
  field::FieldEquivarianceStats equivariance;
  bool equivariance_pass = false;
  BoostInvarianceReport correlator;
  double refined_deviation = 0.0;
  bool correlator_pass = false;
  bool refinement_pass = true;
  bool pass = false;
  std::vector<std::string> culprits;
  std::vector<Threshold> thresholds;

  io::Json to_json() const;
};

FrameReport frame_prediction_report(const FrameReportConfig& config);

struct NoncovarianceConfig {
  std::size_t sites = 256;
  double spacing = 1.0;
  double field_mass = 0.05;
  /// Classical pulse carried by the coherent state; 0 gives the ground state.
  double pulse_amplitude = 1.0;
  double pulse_width = 8.0;
  double pulse_centre = 0.0;
  /// Deterministic Bohmian offset from the mean field at t = 0.
  double offset_amplitude = 0.5;
  double offset_width = 4.0;
  double offset_centre = 10.0;
  double boost_velocity = 0.3;
  double duration = 20.0;
  std::size_t samples = 11;
  double dt = 0.02;
  double guidance_sign = 1.0;
};

struct NoncovarianceReport {
  /// max |Phi_B' - Phi_B| over common events: the S-frame Bohmian field against the boosted
  /// S0 Bohmian field.
  double trajectory_mismatch = 0.0;
  /// max |<Phi>' - <Phi>| over the same events.
  double prediction_mismatch = 0.0;
  double ratio = 0.0;
  bool stationary = false;
  std::vector<double> sample_times;
  std::vector<double> sites;
  /// [sample][site] values in the S frame.
  std::vector<std::vector<double>> bohm_boosted_s0;
  std::vector<std::vector<double>> bohm_frame_s;
  std::vector<std::string> warnings;

  io::Json to_json() const;
};

/// Sites sit at (i - N/2) a; events compare on the S lattice at the sampled S times.
NoncovarianceReport trajectory_noncovariance_demo(const NoncovarianceConfig& config);

}  // namespace pilot::relativity
