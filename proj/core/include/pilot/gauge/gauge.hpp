#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pilot/io.hpp"

namespace pilot::gauge {

inline constexpr std::size_t kMaxGaugePoints = 32;
/// Mean of 1/|r| over a unit cube centred on the origin; regularizes the kernel's self term.
inline constexpr double kCubeSelfPotential = 2.3800774;

/// Periodic cubic grid with points at (i - n/2) * spacing per axis. Flat index is
/// row-major with axis 0 slowest.
struct GaugeGrid {
  std::size_t points = 16;
  double spacing = 1.0;

  GaugeGrid() = default;
  /// Throws InvalidInput on a non-positive size or spacing, SizeLimitExceeded above 32 points.
  GaugeGrid(std::size_t points, double spacing);

  std::size_t size() const noexcept { return points * points * points; }
  double cell_volume() const noexcept { return spacing * spacing * spacing; }
  double coordinate(std::size_t i) const noexcept {
    return (static_cast<double>(i) - static_cast<double>(points / 2)) * spacing;
  }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return (i * points + j) * points + k;
  }
  std::array<double, 3> position(std::size_t flat) const noexcept;
};

using ScalarField = std::vector<double>;
using VectorField = std::array<std::vector<double>, 3>;

/// Potentials and charge density at one time.
struct GaugeSnapshot {
  ScalarField phi;
  VectorField a;
  ScalarField rho;
  double time = 0.0;
};

/// One snapshot, or two adjacent snapshots when time derivatives are needed.
struct GaugeConfiguration {
  GaugeGrid grid;
  std::vector<GaugeSnapshot> snapshots;

  /// Throws ShapeMismatch on field sizes, InvalidInput on non-finite values, non-increasing
  /// times or a snapshot count outside 1..2.
  void validate() const;
};

struct FieldStrength {
  VectorField e;
  VectorField b;
  /// Midpoint of the snapshot pair.
  double time = 0.0;
};

/// Spectral derivative operators on the periodic grid (Nyquist components dropped in first
/// derivatives, kept in the Laplacian).
ScalarField divergence(const GaugeGrid& grid, const VectorField& a);
VectorField gradient(const GaugeGrid& grid, const ScalarField& f);
/// Second-order central differences with periodic wrap; suited to non-smooth isolated potentials.
VectorField central_gradient(const GaugeGrid& grid, const ScalarField& f);
VectorField curl(const GaugeGrid& grid, const VectorField& a);
ScalarField laplacian(const GaugeGrid& grid, const ScalarField& f);

/// Transverse part of A: A - grad(div^-1 A), so div A_T = 0 spectrally.
VectorField coulomb_project(const GaugeGrid& grid, const VectorField& a);

enum class BoundaryMode { periodic, isolated };

/// Solves lap(phi) = -rho. Periodic mode needs sum(rho) = 0 (Solvability otherwise) and fixes
/// the mean of phi to zero. Isolated mode convolves with 1/(4 pi |x - x'|) on a zero-padded grid.
ScalarField solve_scalar_potential(const GaugeGrid& grid, const ScalarField& rho,
                                   BoundaryMode mode = BoundaryMode::periodic);

/// Direct free-space kernel sum at an arbitrary point, skipping any source at zero distance.
double coulomb_kernel_sum(const GaugeGrid& grid, const ScalarField& rho, const std::array<double, 3>& x);

/// max |lap(phi) + rho|.
double poisson_residual(const GaugeGrid& grid, const ScalarField& phi, const ScalarField& rho);

/// A -> A + grad(lambda), phi -> phi - d(lambda)/dt. `lambda` holds one field per snapshot;
/// with two snapshots d/dt is their difference quotient. A single snapshot with a single
/// lambda needs the static overload. Throws NeedsHistory when lambda counts disagree.
GaugeConfiguration gauge_transform(const GaugeConfiguration& config, const std::vector<ScalarField>& lambda);
/// Time-independent lambda (d/dt lambda = 0).
GaugeConfiguration gauge_transform_static(const GaugeConfiguration& config, const ScalarField& lambda);

/// E = -grad(phi_mid) - (A_1 - A_0) / dt and B = curl(A_mid) at the pair's midpoint.
/// Throws NeedsHistory with a single snapshot.
FieldStrength field_strength(const GaugeConfiguration& config);
enum class Stencil { spectral, central };

/// Static electric field -grad(phi) and B = curl(A) of one snapshot (no dA/dt term).
/// The stencil applies to E; isolated-source potentials need the central one.
FieldStrength static_field_strength(const GaugeGrid& grid, const GaugeSnapshot& snapshot,
                                    Stencil stencil = Stencil::spectral);

double max_abs(const ScalarField& f) noexcept;
double max_abs(const VectorField& f) noexcept;
double max_abs_difference(const VectorField& x, const VectorField& y);

/// Sum of `modes` random low-wavenumber Fourier components; smooth and periodic.
ScalarField random_smooth_field(const GaugeGrid& grid, std::uint64_t seed, std::size_t modes = 6,
                                double amplitude = 1.0);
VectorField random_smooth_vector_field(const GaugeGrid& grid, std::uint64_t seed, std::size_t modes = 6);

struct InstantaneityReport {
  std::vector<double> times;
  std::vector<double> probe_phi;
  double step_time = 0.0;
  /// Time of the first snapshot whose probe potential differs from the first one (NaN: none).
  double change_time = 0.0;
  double delta_phi = 0.0;
  double predicted_delta_phi = 0.0;
  double probe_distance = 0.0;
  std::string note;

  io::Json to_json() const;
};

/// Probe potential for a charge density sequence, solved slice by slice in isolated mode.
InstantaneityReport instantaneity_demo(const GaugeGrid& grid, const std::vector<ScalarField>& rho,
                                       const std::vector<double>& times, const std::array<double, 3>& probe);

struct GaugeInvarianceReport {
  std::size_t transforms = 0;
  double max_field_difference = 0.0;
  double max_projected_divergence = 0.0;
  double max_poisson_residual = 0.0;
  double max_div_b = 0.0;

  io::Json to_json() const;
};

/// Random neutral configurations with random smooth gauge functions.
GaugeInvarianceReport gauge_invariance_check(const GaugeGrid& grid, std::size_t transforms, std::uint64_t seed,
                                             double dt = 0.1);

/// CSV rows: i, j, k, x, y, z, phi, ax, ay, az, rho.
void write_snapshot_csv(std::ostream& out, const GaugeGrid& grid, const GaugeSnapshot& snapshot);
GaugeSnapshot read_snapshot_csv(std::istream& in, const GaugeGrid& grid);
/// CSV rows: i, j, k, ex, ey, ez, bx, by, bz.
void write_field_strength_csv(std::ostream& out, const GaugeGrid& grid, const FieldStrength& f);

}  // namespace pilot::gauge
